#include "modkit/clients.hpp"

#include <algorithm>
#include <array>

namespace modkit {

namespace {

// Confidence approximates the share of the dominant gender among people with
// that first name in public name-frequency records.
constexpr std::array<NameEntry, 283> kNames{{
    {"aaron", Gender::male, 0.99},
    {"abigail", Gender::female, 0.95},
    {"adam", Gender::male, 0.98},
    {"ahmed", Gender::male, 0.97},
    {"aisha", Gender::female, 0.99},
    {"alan", Gender::male, 0.99},
    {"albert", Gender::male, 0.97},
    {"alex", Gender::male, 0.58},
    {"alexander", Gender::male, 0.96},
    {"alexis", Gender::female, 0.99},
    {"alice", Gender::female, 0.97},
    {"amanda", Gender::female, 0.95},
    {"amber", Gender::female, 0.96},
    {"amelia", Gender::female, 0.97},
    {"amy", Gender::female, 0.97},
    {"andrea", Gender::female, 0.98},
    {"andrew", Gender::male, 0.97},
    {"angela", Gender::female, 0.97},
    {"ann", Gender::female, 0.98},
    {"anna", Gender::female, 0.95},
    {"anthony", Gender::male, 0.98},
    {"aria", Gender::female, 0.96},
    {"arjun", Gender::male, 0.98},
    {"arthur", Gender::male, 0.99},
    {"ashley", Gender::female, 0.96},
    {"astrid", Gender::female, 0.98},
    {"aurora", Gender::female, 0.98},
    {"austin", Gender::male, 0.99},
    {"ava", Gender::female, 0.96},
    {"avery", Gender::female, 0.57},
    {"barbara", Gender::female, 0.95},
    {"benjamin", Gender::male, 0.99},
    {"betty", Gender::female, 0.97},
    {"beverly", Gender::female, 0.95},
    {"billy", Gender::male, 0.99},
    {"bobby", Gender::male, 0.97},
    {"brandon", Gender::male, 0.99},
    {"brenda", Gender::female, 0.96},
    {"brian", Gender::male, 0.99},
    {"brittany", Gender::female, 0.99},
    {"bruce", Gender::male, 0.98},
    {"bryan", Gender::male, 0.97},
    {"camille", Gender::female, 0.95},
    {"carl", Gender::male, 0.96},
    {"carlos", Gender::male, 0.98},
    {"carmen", Gender::female, 0.95},
    {"carol", Gender::female, 0.99},
    {"carolyn", Gender::female, 0.98},
    {"casey", Gender::male, 0.57},
    {"catherine", Gender::female, 0.99},
    {"charles", Gender::male, 0.95},
    {"charlie", Gender::male, 0.56},
    {"charlotte", Gender::female, 0.96},
    {"cheryl", Gender::female, 0.97},
    {"chiara", Gender::female, 0.97},
    {"chloe", Gender::female, 0.96},
    {"christian", Gender::male, 0.97},
    {"christina", Gender::female, 0.98},
    {"christine", Gender::female, 0.99},
    {"christopher", Gender::male, 0.97},
    {"cynthia", Gender::female, 0.98},
    {"daniel", Gender::male, 0.99},
    {"danielle", Gender::female, 0.99},
    {"david", Gender::male, 0.95},
    {"deborah", Gender::female, 0.96},
    {"debra", Gender::female, 0.98},
    {"denise", Gender::female, 0.98},
    {"dennis", Gender::male, 0.99},
    {"diana", Gender::female, 0.99},
    {"diane", Gender::female, 0.99},
    {"diego", Gender::male, 0.96},
    {"donald", Gender::male, 0.97},
    {"donna", Gender::female, 0.98},
    {"doris", Gender::female, 0.96},
    {"dorothy", Gender::female, 0.99},
    {"douglas", Gender::male, 0.98},
    {"dylan", Gender::male, 0.98},
    {"edward", Gender::male, 0.99},
    {"elena", Gender::female, 0.96},
    {"elijah", Gender::male, 0.99},
    {"elizabeth", Gender::female, 0.97},
    {"ella", Gender::female, 0.97},
    {"ellie", Gender::female, 0.99},
    {"emily", Gender::female, 0.99},
    {"emma", Gender::female, 0.97},
    {"eric", Gender::male, 0.96},
    {"ethan", Gender::male, 0.96},
    {"eugene", Gender::male, 0.96},
    {"evelyn", Gender::female, 0.96},
    {"fatima", Gender::female, 0.99},
    {"felix", Gender::male, 0.96},
    {"frances", Gender::female, 0.99},
    {"frank", Gender::male, 0.96},
    {"freya", Gender::female, 0.95},
    {"gabriel", Gender::male, 0.97},
    {"gary", Gender::male, 0.95},
    {"george", Gender::male, 0.99},
    {"gerald", Gender::male, 0.96},
    {"giulia", Gender::female, 0.95},
    {"gloria", Gender::female, 0.98},
    {"grace", Gender::female, 0.95},
    {"gregory", Gender::male, 0.96},
    {"hannah", Gender::female, 0.99},
    {"harold", Gender::male, 0.96},
    {"harriet", Gender::female, 0.97},
    {"hazel", Gender::female, 0.97},
    {"heather", Gender::female, 0.96},
    {"helen", Gender::female, 0.98},
    {"henry", Gender::male, 0.99},
    {"hiroshi", Gender::male, 0.96},
    {"holly", Gender::female, 0.97},
    {"hugo", Gender::male, 0.97},
    {"imogen", Gender::female, 0.96},
    {"ines", Gender::female, 0.97},
    {"ingrid", Gender::female, 0.95},
    {"isabella", Gender::female, 0.97},
    {"isla", Gender::female, 0.96},
    {"jack", Gender::male, 0.99},
    {"jacob", Gender::male, 0.97},
    {"jacqueline", Gender::female, 0.99},
    {"jade", Gender::female, 0.95},
    {"james", Gender::male, 0.97},
    {"jamie", Gender::female, 0.59},
    {"janet", Gender::female, 0.97},
    {"janice", Gender::female, 0.97},
    {"jason", Gender::male, 0.98},
    {"jean", Gender::female, 0.98},
    {"jeffrey", Gender::male, 0.96},
    {"jennifer", Gender::female, 0.95},
    {"jeremy", Gender::male, 0.97},
    {"jerry", Gender::male, 0.97},
    {"jesse", Gender::male, 0.97},
    {"jessica", Gender::female, 0.95},
    {"joan", Gender::female, 0.99},
    {"joe", Gender::male, 0.96},
    {"john", Gender::male, 0.99},
    {"johnny", Gender::male, 0.99},
    {"jonathan", Gender::male, 0.96},
    {"jordan", Gender::male, 0.56},
    {"jose", Gender::male, 0.95},
    {"joseph", Gender::male, 0.96},
    {"joshua", Gender::male, 0.99},
    {"joyce", Gender::female, 0.96},
    {"juan", Gender::male, 0.96},
    {"judith", Gender::female, 0.98},
    {"judy", Gender::female, 0.96},
    {"julie", Gender::female, 0.97},
    {"justin", Gender::male, 0.97},
    {"karen", Gender::female, 0.97},
    {"katherine", Gender::female, 0.96},
    {"kathleen", Gender::female, 0.98},
    {"kathryn", Gender::female, 0.96},
    {"kayla", Gender::female, 0.97},
    {"keith", Gender::male, 0.99},
    {"kelly", Gender::female, 0.98},
    {"kenji", Gender::male, 0.97},
    {"kenneth", Gender::male, 0.96},
    {"kevin", Gender::male, 0.96},
    {"kimberly", Gender::female, 0.98},
    {"kyle", Gender::male, 0.99},
    {"larry", Gender::male, 0.99},
    {"lars", Gender::male, 0.97},
    {"laura", Gender::female, 0.96},
    {"lauren", Gender::female, 0.98},
    {"lawrence", Gender::male, 0.99},
    {"layla", Gender::female, 0.95},
    {"lea", Gender::female, 0.95},
    {"leila", Gender::female, 0.98},
    {"leo", Gender::male, 0.97},
    {"liam", Gender::male, 0.97},
    {"lily", Gender::female, 0.98},
    {"linda", Gender::female, 0.97},
    {"lisa", Gender::female, 0.95},
    {"logan", Gender::male, 0.99},
    {"lori", Gender::female, 0.99},
    {"louis", Gender::male, 0.97},
    {"luca", Gender::male, 0.95},
    {"lucas", Gender::male, 0.97},
    {"lucia", Gender::female, 0.96},
    {"lucy", Gender::female, 0.98},
    {"luigi", Gender::male, 0.98},
    {"madison", Gender::female, 0.99},
    {"manon", Gender::female, 0.96},
    {"marco", Gender::male, 0.96},
    {"margaret", Gender::female, 0.99},
    {"maria", Gender::female, 0.98},
    {"marie", Gender::female, 0.97},
    {"marilyn", Gender::female, 0.97},
    {"mark", Gender::male, 0.96},
    {"martha", Gender::female, 0.97},
    {"mary", Gender::female, 0.96},
    {"mason", Gender::male, 0.97},
    {"mateo", Gender::male, 0.97},
    {"matthew", Gender::male, 0.99},
    {"maya", Gender::female, 0.95},
    {"megan", Gender::female, 0.98},
    {"mei", Gender::female, 0.97},
    {"melissa", Gender::female, 0.96},
    {"mia", Gender::female, 0.96},
    {"michael", Gender::male, 0.96},
    {"michelle", Gender::female, 0.97},
    {"molly", Gender::female, 0.95},
    {"morgan", Gender::female, 0.58},
    {"nancy", Gender::female, 0.95},
    {"naomi", Gender::female, 0.99},
    {"natalie", Gender::female, 0.99},
    {"nathan", Gender::male, 0.99},
    {"nicholas", Gender::male, 0.95},
    {"nicole", Gender::female, 0.96},
    {"noah", Gender::male, 0.99},
    {"nora", Gender::female, 0.97},
    {"oliver", Gender::male, 0.99},
    {"olivia", Gender::female, 0.98},
    {"omar", Gender::male, 0.96},
    {"oscar", Gender::male, 0.95},
    {"pamela", Gender::female, 0.98},
    {"patricia", Gender::female, 0.98},
    {"patrick", Gender::male, 0.98},
    {"paul", Gender::male, 0.98},
    {"penelope", Gender::female, 0.99},
    {"peter", Gender::male, 0.96},
    {"philip", Gender::male, 0.98},
    {"pierre", Gender::male, 0.95},
    {"poppy", Gender::female, 0.97},
    {"priya", Gender::female, 0.99},
    {"quinn", Gender::female, 0.52},
    {"rachel", Gender::female, 0.96},
    {"raj", Gender::male, 0.98},
    {"ralph", Gender::male, 0.96},
    {"randy", Gender::male, 0.98},
    {"raymond", Gender::male, 0.96},
    {"rebecca", Gender::female, 0.96},
    {"richard", Gender::male, 0.97},
    {"riley", Gender::female, 0.53},
    {"robert", Gender::male, 0.96},
    {"robin", Gender::female, 0.57},
    {"roger", Gender::male, 0.98},
    {"ronald", Gender::male, 0.99},
    {"rosa", Gender::female, 0.99},
    {"roy", Gender::male, 0.96},
    {"ruby", Gender::female, 0.99},
    {"russell", Gender::male, 0.96},
    {"ruth", Gender::female, 0.96},
    {"ryan", Gender::male, 0.97},
    {"sam", Gender::male, 0.59},
    {"samantha", Gender::female, 0.97},
    {"samuel", Gender::male, 0.97},
    {"sandra", Gender::female, 0.96},
    {"sara", Gender::female, 0.98},
    {"sarah", Gender::female, 0.96},
    {"scarlett", Gender::female, 0.98},
    {"scott", Gender::male, 0.99},
    {"sean", Gender::male, 0.99},
    {"sharon", Gender::female, 0.99},
    {"shirley", Gender::female, 0.95},
    {"sofia", Gender::female, 0.95},
    {"sophia", Gender::female, 0.96},
    {"stella", Gender::female, 0.98},
    {"stephanie", Gender::female, 0.96},
    {"stephen", Gender::male, 0.98},
    {"steven", Gender::male, 0.96},
    {"susan", Gender::female, 0.97},
    {"sven", Gender::male, 0.99},
    {"taylor", Gender::female, 0.55},
    {"teresa", Gender::female, 0.95},
    {"terry", Gender::male, 0.96},
    {"theo", Gender::male, 0.99},
    {"theresa", Gender::female, 0.97},
    {"thomas", Gender::male, 0.97},
    {"timothy", Gender::male, 0.99},
    {"tyler", Gender::male, 0.98},
    {"victoria", Gender::female, 0.95},
    {"vincent", Gender::male, 0.97},
    {"violet", Gender::female, 0.97},
    {"virginia", Gender::female, 0.97},
    {"walter", Gender::male, 0.99},
    {"wayne", Gender::male, 0.96},
    {"william", Gender::male, 0.99},
    {"willie", Gender::male, 0.99},
    {"yuki", Gender::female, 0.97},
    {"zachary", Gender::male, 0.97},
    {"zara", Gender::female, 0.96},
    {"zoe", Gender::female, 0.96},
}};

}  // namespace

std::span<const NameEntry> offline_name_table() {
  static_assert(std::is_sorted(kNames.begin(), kNames.end(),
                               [](const NameEntry& a, const NameEntry& b) { return a.name < b.name; }));
  return kNames;
}

std::optional<NameEntry> lookup_offline_name(std::string_view first_name) {
  auto it = std::lower_bound(kNames.begin(), kNames.end(), first_name,
                             [](const NameEntry& e, std::string_view n) { return e.name < n; });
  if (it == kNames.end() || it->name != first_name) return std::nullopt;
  return *it;
}

}  // namespace modkit
