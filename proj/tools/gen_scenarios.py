#!/usr/bin/env python3
"""Regenerates the bundled synthetic scenarios and pipeline corpus under data/.

Output is deterministic (fixed seeds). Run from the repository root:

    python3 tools/gen_scenarios.py
"""
import json
import random
import re
from collections import Counter
from datetime import datetime, timedelta, timezone
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
END = datetime(2022, 11, 1, 12, 0, 0, tzinfo=timezone.utc)

LEXICON = set(re.findall(r'"([a-z]+)"', (ROOT / "src" / "lexicon.cpp").read_text()))

BENIGN = [
    "good morning {h}!",
    "great talk today {h}, thanks for sharing",
    "{h} see you at the meetup on thursday",
    "lovely photo {h}",
    "coffee later {h}?",
    "{h} did you read the new report on city parks",
    "congrats on the new job {h}",
    "{h} thanks for the recommendation, the book was wonderful",
    "happy birthday {h}, hope it is a great one",
    "{h} the slides are up on the course page",
    "{h} agreed, the second half of the match was much better",
    "nice thread {h}, bookmarking this",
]
ABUSIVE = [
    "{h} you are a stupid ugly bitch",
    "{h} shut up you worthless slut",
    "nobody cares {h} you pathetic idiot",
    "{h} you dumb whore, log off",
    "{h} ugly stupid loser",
    "{h} what a pathetic moron you are",
]


def ts(dt):
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def bio(n):
    base = "Researcher, writer and runner. Interested in cities, public health and data. Opinions my own. "
    return (base * 4)[:n]


def profile(uid, handle, name, bio_len, urls, image, location):
    return {
        "user_id": uid,
        "handle": handle,
        "display_name": name,
        "bio": bio(bio_len),
        "urls": [f"https://example.org/{handle}/{i}" for i in range(urls)],
        "has_image": image,
        "location": location,
        "created_at": "2015-06-01T00:00:00Z",
        "followers_count": 100 + len(handle) * 7,
        "tweet_count": 1000 + len(name) * 13,
    }


def event(eid, author, text, when, reply=None):
    return {
        "event_id": eid,
        "author_id": author["user_id"],
        "author_handle": author["handle"],
        "text": text,
        "created_at": ts(when),
        "reply_to_event_id": reply,
        "lang": "en",
    }


def check_text(text, abusive):
    tokens = [t.strip("@,.!?'").lower() for t in text.split()]
    tokens = [t for t in tokens if t]
    hits = sum(t in LEXICON for t in tokens)
    score = min(1.0, hits / max(1, len(tokens)) * 4)
    if abusive:
        assert score >= 0.7, text
    else:
        assert hits == 0, text


class Builder:
    def __init__(self, name, seed):
        self.name = name
        self.rng = random.Random(seed)
        self.profiles = {}
        self.events = []
        self.decisions = []
        self.counter = 0

    def user(self, *args):
        p = profile(*args)
        self.profiles[p["user_id"]] = p
        return p

    def say(self, author, targets, when, abusive=False, template=None):
        self.counter += 1
        eid = f"{self.name[:3]}-{self.counter:04d}"
        handles = " ".join("@" + t["handle"] for t in targets)
        pool = ABUSIVE if abusive else BENIGN
        text = (template or self.rng.choice(pool)).format(h=handles)
        check_text(text, abusive)
        self.events.append(event(eid, author, text, when))
        return eid

    def noise(self, target, friends, count, span_days, reply_every=2):
        """Benign traffic between the target and friends, roughly symmetric."""
        slots = sorted(self.rng.sample(range(span_days * 24 * 6), count))
        sent = Counter()
        for slot in slots:
            when = END - timedelta(days=span_days) + timedelta(minutes=10 * slot)
            friend = self.rng.choice(friends)
            if sent[friend["user_id"]] % reply_every == 1:
                self.say(target, [friend], when)
            else:
                self.say(friend, [target], when)
            sent[friend["user_id"]] += 1

    def write(self, monitored, shuffle=True):
        out = DATA / "scenarios" / self.name
        out.mkdir(parents=True, exist_ok=True)
        events = list(self.events)
        if shuffle:
            # Replay must not depend on file order.
            self.rng.shuffle(events)
        (out / "events.jsonl").write_text("".join(json.dumps(e) + "\n" for e in events))
        (out / "profiles.jsonl").write_text(
            "".join(json.dumps(p) + "\n" for p in sorted(self.profiles.values(), key=lambda p: p["user_id"]))
        )
        (out / "decisions.jsonl").write_text("".join(json.dumps(d) + "\n" for d in self.decisions))
        (out / "config.json").write_text(json.dumps({"monitored_targets": [monitored]}, indent=2) + "\n")
        hourly = Counter()
        for e in self.events:
            if any(("@" + self.profiles[monitored]["handle"]) in e["text"] for _ in [0]):
                hourly[e["created_at"][:13]] += 1
        return len(self.events), max(hourly.values())


def cast(b):
    target = b.user("u_target", "emma_c", "Emma Clarke", 120, 2, True, "Leeds, UK")
    friends = [
        b.user("u_f1", "olivia_r", "Olivia Reed", 140, 3, True, "York"),
        b.user("u_f2", "liam_t", "Liam Turner", 90, 1, True, "Bristol"),
        b.user("u_f3", "grace_h", "Grace Hall", 150, 2, True, None),
        b.user("u_f4", "noah_b", "Noah Baker", 100, 2, True, "Cardiff"),
        b.user("u_f5", "chloe_w", "Chloe Ward", 80, 1, True, "Bath"),
        b.user("u_f6", "oscar_p", "Oscar Price", 110, 1, True, "Hull"),
    ]
    return target, friends


def persistent_abuser():
    b = Builder("persistent_abuser", 11)
    target, friends = cast(b)
    abuser = b.user("u_abuser", "jporter", "James Porter", 100, 1, True, "Leeds")
    b.noise(target, friends, 194, 30)
    ids = []
    for i, days in enumerate([150, 100, 50, 6, 5.5, 5]):
        ids.append(b.say(abuser, [target], END - timedelta(days=days), abusive=True, template=ABUSIVE[i]))
    b.decisions.append({
        "prompt_selector": {"pair": ["u_abuser", "u_target"], "kind": "longitudinal"},
        "decision": "accept",
        "after_event_id": ids[3],
    })
    return b.write("u_target")


def pile_on():
    b = Builder("pile_on", 12)
    target, friends = cast(b)
    crowd = [b.user(f"u_p{i:02d}", f"anon_fan{i:02d}", name, 60, 1, True, None)
             for i, name in enumerate(["Jack", "Ryan", "Kyle", "Sean", "Mark", "Paul", "Adam", "Eric", "Gary", "Carl",
                                        "Sean", "Dylan", "Tyler", "Logan", "Jesse", "Bruce", "Roger", "Wayne", "Keith",
                                        "Peter", "Scott", "Aaron", "Henry", "Jacob", "Jason", "Kevin", "Brian", "Frank",
                                        "Larry", "Dennis"])]
    b.noise(target, friends, 170, 30)
    start = END - timedelta(days=2)
    ids = []
    for i, member in enumerate(crowd):
        ids.append(b.say(member, [target], start + timedelta(minutes=i * 100 // 60, seconds=(i * 97) % 60),
                         abusive=True))
    b.decisions.append({
        "prompt_selector": {"pair": [crowd[9]["user_id"], "u_target"], "kind": "volumetric"},
        "decision": "accept",
        "after_event_id": ids[12],
    })
    return b.write("u_target")


def low_info_abuser():
    b = Builder("low_info_abuser", 13)
    target, friends = cast(b)
    anon = b.user("u_anon", "x93kq_shadow", "x93kq_shadow", 0, 0, False, None)
    b.noise(target, friends, 197, 30)
    ids = []
    for i, days in enumerate([4, 3.5, 3]):
        ids.append(b.say(anon, [target], END - timedelta(days=days), template=[
            "{h} i know which office you work in",
            "{h} nice jacket on the tram today",
            "{h} you should reply to me",
        ][i]))
    b.decisions.append({
        "prompt_selector": {"pair": ["u_anon", "u_target"], "kind": "informational"},
        "decision": "dismiss",
        "after_event_id": ids[2],
    })
    return b.write("u_target")


def benign_conversation():
    b = Builder("benign_conversation", 14)
    target, friends = cast(b)
    friend = friends[0]
    for i in range(200):
        when = END - timedelta(days=60) + timedelta(hours=7 * i, minutes=b.rng.randrange(0, 50))
        if i % 2 == 0:
            b.say(friend, [target], when)
        else:
            b.say(target, [friend], when)
    return b.write("u_target")


def male_male():
    b = Builder("male_male", 15)
    target = b.user("u_mtarget", "dmiller", "David Miller", 120, 2, True, "Leeds")
    friends = [
        b.user("u_m1", "ptaylor", "Paul Taylor", 100, 1, True, "York"),
        b.user("u_m2", "sreid", "Steven Reid", 90, 2, True, "Hull"),
        b.user("u_m3", "gwood", "George Wood", 130, 1, True, None),
    ]
    abuser = b.user("u_mabuser", "mevans", "Mark Evans", 0, 0, False, None)
    b.noise(target, friends, 170, 30)
    for i, days in enumerate([150, 100, 50, 6, 5.5, 5]):
        b.say(abuser, [target], END - timedelta(days=days), abusive=True, template=ABUSIVE[i])
    crowd = [b.user(f"u_mp{i:02d}", f"mfan{i:02d}", name, 60, 1, True, None)
             for i, name in enumerate(["Jack", "Ryan", "Kyle", "Sean", "Mark", "Paul", "Adam", "Eric", "Gary", "Carl",
                                        "Dylan", "Tyler", "Logan", "Jesse", "Bruce", "Roger", "Wayne", "Keith", "Peter",
                                        "Scott", "Aaron", "Henry", "Jacob", "Jason"])]
    start = END - timedelta(days=2)
    for i, member in enumerate(crowd):
        b.say(member, [target], start + timedelta(minutes=2 * i), abusive=True)
    return b.write("u_mtarget")


def pipeline_corpus():
    rng = random.Random(21)
    names = ["Sarah Jones", "Emily Clark", "Hannah Wright", "Olivia Green", "Sophia Hill", "Grace Lee",
             "Chloe Scott", "Lucy Adams", "Mia Baker", "Zoe Carter", "Ella Evans", "Amelia Hughes",
             "Ruby Morris", "Isla Ward", "Freya Cox", "Laura King", "Anna Bell", "Julie Ross",
             "James Brown", "David Smith", "Michael Jones", "Thomas Wilson", "Daniel Taylor", "Matthew Moore",
             "Andrew White", "Joshua Harris", "Ryan Martin", "Jacob Thompson", "Liam Walker", "Oliver Young",
             "Jordan Allen", "Taylor Wright", "Casey Knight", "Riley Stone", "Alex Fox", "Jamie Reed",
             "Sam Price", "Robin Hart", "Morgan Lane", "Quinn Shaw"]
    profiles = []
    for i, n in enumerate(names):
        first = n.split()[0].lower()
        profiles.append(profile(f"c{i:03d}", f"{first}_{i}", n, rng.randrange(0, 161), rng.randrange(0, 4),
                                rng.random() < 0.7, "Somewhere" if rng.random() < 0.5 else None))
    events = []
    for i in range(200):
        author = rng.choice(profiles)
        k = rng.choice([0, 1, 1, 1, 2, 2, 3, 6])
        targets = rng.sample(profiles, k)
        if rng.random() < 0.05:
            targets.append(author)
        handles = " ".join("@" + (t["handle"].upper() if rng.random() < 0.1 else t["handle"]) for t in targets)
        abusive = rng.random() < 0.4
        body = rng.choice(ABUSIVE if abusive else BENIGN).format(h=handles)
        when = END - timedelta(days=20) + timedelta(minutes=rng.randrange(0, 20 * 24 * 60))
        events.append(event(f"pc-{i:04d}", author, body, when))
    lines = [json.dumps(e) for e in events]
    bad_missing = dict(events[0]); bad_missing["event_id"] = "bad-1"; del bad_missing["created_at"]
    bad_time = dict(events[1]); bad_time["event_id"] = "bad-2"; bad_time["created_at"] = "yesterday"
    lines.insert(50, json.dumps(bad_missing))
    lines.insert(120, json.dumps(bad_time))
    lines.insert(180, '{"event_id": "bad-3", "text": ')
    out = DATA / "corpus"
    out.mkdir(parents=True, exist_ok=True)
    (out / "events.jsonl").write_text("".join(l + "\n" for l in lines))
    (out / "profiles.jsonl").write_text("".join(json.dumps(p) + "\n" for p in profiles))
    return len(events)


if __name__ == "__main__":
    for fn in [persistent_abuser, pile_on, low_info_abuser, benign_conversation, male_male]:
        print(fn.__name__, fn())
    print("pipeline_corpus", pipeline_corpus())
