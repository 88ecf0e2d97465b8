#!/usr/bin/env python3
"""Builds the three-researcher fixture corpus used by the test suites.

Each researcher's publication list is constructed so that the base
quantities of the reference overview table hold by construction:
document-type counts, first/solo authorship, first year, total citations,
h index, self-citation share, P_top10%, the number of percentile-covered
publications and the median percentile. Reference sets are built per
(field, year) so that every covered publication lands on its planned
percentile exactly; journal tables reproduce the reference per-journal NJPs.

Run from anywhere; writes next to this script. Output is deterministic.
"""

import csv
import json
import random
from collections import Counter, defaultdict
from pathlib import Path

HERE = Path(__file__).resolve().parent
CENSUS = 2011
GRID = 1000  # reference sets have 1000 entries, so percentiles land on a 0.1 grid

DOC_ORDER = ["Article", "Editorial", "Letter", "Meeting Abstract", "News Item", "Note", "Proceedings Paper", "Review"]
SUBSTANTIVE = {"Article", "Note", "Proceedings Paper", "Review"}

# Per-journal NJPs and publication counts, in table order.
NJP_TABLE = {
    1: [(1, 0.01), (3, 0.05), (26, 0.06), (1, 0.07), (3, 0.07), (1, 0.07), (2, 0.08), (1, 0.08), (1, 0.08),
        (1, 0.10), (1, 0.10), (1, 0.16), (1, 0.17), (72, 0.19), (1, 0.22), (1, 0.22), (1, 0.24), (6, 0.26),
        (1, 0.30), (1, 0.30), (2, 0.30), (1, 0.34), (3, 0.37), (1, 0.41), (2, 0.42), (1, 0.42), (4, 0.44),
        (4, 0.45), (1, 0.47), (1, 0.49), (1, 0.52), (1, 0.59), (1, 0.60), (2, 0.63), (9, 0.64), (2, 0.64),
        (1, 0.64), (1, 0.70), (1, 0.70), (1, 0.77), (1, 0.77), (1, 0.80), (1, 0.91)],
    2: [(3, 0.01), (1, 0.01), (9, 0.03), (5, 0.05), (1, 0.05), (1, 0.05), (3, 0.06), (1, 0.07), (1, 0.07),
        (2, 0.08), (1, 0.09), (3, 0.09), (1, 0.09), (1, 0.10), (2, 0.11), (1, 0.11), (2, 0.13), (7, 0.14),
        (1, 0.17), (3, 0.19), (1, 0.23), (6, 0.30), (2, 0.34), (1, 0.38), (1, 0.47), (1, 0.56), (1, 0.59),
        (1, 0.59)],
    3: [(1, 0.01), (1, 0.03), (3, 0.03), (1, 0.05), (3, 0.06), (1, 0.08), (5, 0.08), (3, 0.09), (2, 0.10),
        (1, 0.14), (1, 0.18), (4, 0.20), (2, 0.24), (3, 0.24), (2, 0.24), (3, 0.26), (1, 0.27), (1, 0.30),
        (1, 0.30), (2, 0.31), (34, 0.31), (2, 0.38), (1, 0.41), (1, 0.43), (1, 0.49), (2, 0.62), (1, 0.66),
        (1, 0.88), (1, 0.93)],
}

PEOPLE = {
    1: dict(
        name="Person 1", surname="Keller", given="Anna",
        spellings=["Keller, A.", "Keller, Anna", "Keller, A. M.", "KELLER, ANNA M."],
        types={"Article": 143, "Editorial": 1, "Letter": 3, "Meeting Abstract": 3, "News Item": 0, "Note": 12,
               "Proceedings Paper": 26, "Review": 2},
        first_author=15, solo=0, first_year=1980, citations=15192, h=54, self_rate=0.034,
        eligible=178, recent=3, uncovered=2, p_top10=70, median=15.9,
        field="Chemistry, Physical", self_mode="counts", ranked_category="Ranked Category A",
    ),
    2: dict(
        name="Person 2", surname="Novak", given="Petra",
        spellings=["Novak, P.", "Novak, Petra", "Novák, P.", "NOVAK, PETRA"],
        types={"Article": 54, "Editorial": 1, "Letter": 0, "Meeting Abstract": 0, "News Item": 2, "Note": 0,
               "Proceedings Paper": 17, "Review": 2},
        first_author=17, solo=5, first_year=2001, citations=3796, h=27, self_rate=0.06,
        eligible=59, recent=14, uncovered=0, p_top10=31, median=6.2,
        field="Materials Science, Multidisciplinary", self_mode="records", ranked_category="Ranked Category B",
    ),
    3: dict(
        name="Person 3", surname="Lindqvist", given="Erik",
        spellings=["Lindqvist, E.", "Lindqvist, Erik", "Lindqvist, E. J.", "LINDQVIST, ERIK"],
        types={"Article": 43, "Editorial": 4, "Letter": 1, "Meeting Abstract": 2, "News Item": 0, "Note": 1,
               "Proceedings Paper": 40, "Review": 4},
        first_author=38, solo=12, first_year=1981, citations=7828, h=38, self_rate=0.058,
        eligible=83, recent=3, uncovered=2, p_top10=48, median=8.3,
        field="Physics, Applied", self_mode="counts", ranked_category="Ranked Category C",
    ),
}

UNCOVERED_FIELD = "Crystallography"
SECOND_FIELD = "Multidisciplinary Sciences"  # listed on some records, never has a reference set

SURNAMES = ["Adler", "Baptiste", "Costa", "Dubois", "Eriksen", "Fischer", "Garcia", "Horvat", "Ito", "Jansen",
            "Kowalski", "Laurent", "Moreau", "Nakamura", "Oliveira", "Petrov", "Quinn", "Rossi", "Schmidt",
            "Tanaka", "Urban", "Varga", "Weber", "Xu", "Yilmaz", "Zhang", "Ferreira", "Hansen", "Muller", "Silva"]
INITIALS = "ABCDEFGHJKLMNPRSTW"
TOPICS = ["thin films", "catalytic surfaces", "polymer blends", "nanoparticle growth", "crystal defects",
          "charge transport", "phase transitions", "ion conduction", "oxide interfaces", "molecular sieves",
          "photonic lattices", "spin dynamics", "adsorption kinetics", "ceramic sintering", "quantum dots"]
VERBS = ["Structure of", "Dynamics of", "Synthesis of", "Modelling", "Probing", "Control of", "Stability of",
         "Spectroscopy of", "Tuning", "Mapping"]


def choose_sorted(rng, lo, hi, k):
    """k distinct sorted ints in the open interval (lo, hi)."""
    pool = list(range(lo + 1, hi))
    if len(pool) < k:
        raise ValueError(f"cannot place {k} values in ({lo}, {hi})")
    return sorted(rng.sample(pool, k))


def percentile_pool(rng, n, n_top, median):
    """n distinct percentiles (tenths) with n_top <= 10.0 and the given median."""
    m = round(median * 10)
    fixed = {n // 2: m} if n % 2 else {n // 2 - 1: m - 1, n // 2: m + 1}
    slots = [None] * n
    for i, v in fixed.items():
        slots[i] = v
    # Fill runs between fixed slots, split at the top-decile boundary.
    i = 0
    while i < n:
        if slots[i] is not None:
            i += 1
            continue
        j = i
        while j < n and slots[j] is None and (j < n_top) == (i < n_top):
            j += 1
        lo = slots[i - 1] if i > 0 else 0
        hi = slots[j] if j < n and slots[j] is not None else GRID
        if i < n_top:
            hi = min(hi, 101)
        else:
            lo = max(lo, 100)
        for k, v in enumerate(choose_sorted(rng, lo, hi, j - i)):
            slots[i + k] = v
        i = j
    assert sorted(slots) == slots and len(set(slots)) == n
    assert sum(1 for v in slots if v <= 100) == n_top
    return slots


def spread_years(rng, n, first, last, weights, must_first=True):
    years = list(range(first, last + 1))
    out = rng.choices(years, weights=[weights(y) for y in years], k=n)
    if must_first and first not in out:
        out[0] = first
    return out


def build_person(pid, cfg, rng):
    last = CENSUS - 1
    first = cfg["first_year"]
    n_sub = sum(v for k, v in cfg["types"].items() if k in SUBSTANTIVE)
    assert n_sub == cfg["eligible"] + cfg["recent"] + cfg["uncovered"]

    # Per-person productivity curves.
    if pid == 1:
        weight = lambda y: 2 if y < 1990 else 7
    elif pid == 2:
        weight = lambda y: 1 + (y - 2001)
    else:
        weight = lambda y: 12 if y == 1997 else 3

    sub_types = [t for t in DOC_ORDER if t in SUBSTANTIVE for _ in range(cfg["types"][t])]
    other_types = [t for t in DOC_ORDER if t not in SUBSTANTIVE for _ in range(cfg["types"][t])]
    rng.shuffle(sub_types)

    pubs = []
    # Substantive publications: eligible, then recent, then uncovered.
    eligible_years = spread_years(rng, cfg["eligible"], first, last, weight)
    for k in range(cfg["eligible"]):
        pubs.append(dict(kind="eligible", year=eligible_years[k], doc_type=sub_types[k]))
    for k in range(cfg["recent"]):
        pubs.append(dict(kind="recent", year=CENSUS, doc_type=sub_types[cfg["eligible"] + k]))
    unc_years = spread_years(rng, cfg["uncovered"], first + 1, last, weight, must_first=False)
    for k in range(cfg["uncovered"]):
        pubs.append(dict(kind="uncovered", year=unc_years[k], doc_type=sub_types[cfg["eligible"] + cfg["recent"] + k]))
    for t in other_types:
        pubs.append(dict(kind="other", year=rng.randint(first + 1, CENSUS), doc_type=t))

    # Citation counts for substantive publications: h of them at >= h+1, the rest in [1, h-1].
    h = cfg["h"]
    sub = [p for p in pubs if p["kind"] != "other"]
    eligible = [p for p in sub if p["kind"] == "eligible"]
    top = set(id(p) for p in rng.sample(eligible, h))
    for p in sub:
        if id(p) in top:
            p["cites"] = h + 1 + int(rng.paretovariate(1.3) * 10)
        elif p["kind"] == "recent":
            p["cites"] = rng.choice([0, 0, 0, 1, 2, 3])
        else:
            p["cites"] = rng.randint(1, h - 1)
    tops = sorted((p for p in sub if id(p) in top), key=lambda p: -p["cites"])

    def rebalance():
        diff = cfg["citations"] - sum(p["cites"] for p in sub)
        while diff != 0:
            for p in tops:
                if diff > 0:
                    step = max(1, diff // len(tops))
                    p["cites"] += step
                    diff -= step
                elif p["cites"] > h + 1:
                    step = min(p["cites"] - (h + 1), max(1, -diff // len(tops)))
                    p["cites"] -= step
                    diff += step
                if diff == 0:
                    break
            else:
                if diff < 0 and all(p["cites"] == h + 1 for p in tops):
                    raise ValueError("cannot reach citation total")

    rebalance()
    # Citation counts must be distinct within each (year) group of covered publications.
    for _ in range(10000):
        groups = defaultdict(list)
        for p in sub:
            if p["kind"] in ("eligible", "recent") and p["cites"] > 0:
                groups[p["year"]].append(p)
        dup = None
        for ps in groups.values():
            c = Counter(p["cites"] for p in ps)
            dup = next((p for p in ps if c[p["cites"]] > 1), None)
            if dup:
                break
        if not dup:
            break
        if id(dup) in top:
            dup["cites"] += 1
        else:
            dup["cites"] = rng.randint(1, h - 1)
        rebalance()
    else:
        raise RuntimeError("could not make citation counts distinct")

    assert sum(p["cites"] for p in sub) == cfg["citations"]
    counts = sorted((p["cites"] for p in sub), reverse=True)
    assert max(i + 1 for i in range(len(counts)) if counts[i] >= i + 1) == h

    # Non-substantive records carry a handful of citations.
    for p in pubs:
        if p["kind"] == "other":
            p["cites"] = rng.randint(0, 6)

    # Planned percentiles for eligible publications.
    pool = percentile_pool(rng, cfg["eligible"], cfg["p_top10"], cfg["median"])
    rng.shuffle(pool)
    by_year = defaultdict(list)
    for p in eligible:
        by_year[p["year"]].append(p)
    cursor = 0
    refsets = {}
    for year in sorted(by_year):
        ps = sorted(by_year[year], key=lambda p: -p["cites"])
        ks = sorted(pool[cursor:cursor + len(ps)])
        cursor += len(ps)
        hist = Counter()
        prev = 0
        for p, k in zip(ps, ks):
            p["planned"] = k / 10
            hist[p["cites"]] += k - prev
            prev = k
        hist[0] += GRID - prev
        refsets[year] = hist
    # Recent-year reference set: zero-cited records score 100 whatever the histogram.
    recent = sorted((p for p in sub if p["kind"] == "recent" and p["cites"] > 0), key=lambda p: -p["cites"])
    hist = Counter()
    prev = 0
    for p in recent:
        k = prev + rng.randint(40, 120)
        hist[p["cites"]] += k - prev
        prev = k
    hist[0] += GRID - prev
    refsets[CENSUS] = hist

    # Authors.
    researcher_spelling = lambda: rng.choice(cfg["spellings"])
    coauthor_pool = [f"{s}, {i}." for s in SURNAMES for i in INITIALS if s != cfg["surname"]]
    order = list(range(len(pubs)))
    rng.shuffle(order)
    first_ids = set(order[: cfg["first_author"]])
    solo_ids = set(order[: cfg["solo"]])
    for idx, p in enumerate(pubs):
        co = rng.sample(coauthor_pool, rng.randint(1, 7))
        if idx in solo_ids:
            p["authors"] = [researcher_spelling()]
        elif idx in first_ids:
            p["authors"] = [researcher_spelling()] + co
        else:
            pos = rng.randint(1, len(co))
            p["authors"] = co[:pos] + [researcher_spelling()] + co[pos:]

    # Journals: the ranked-table placements, the rest in unlisted venues.
    slots = [f"Person {pid} Journal {j + 1}" for j, (n, _) in enumerate(NJP_TABLE[pid]) for _ in range(n)]
    assert len(slots) <= len(pubs)
    rng.shuffle(slots)
    unlisted = [f"Bulletin of Regional Research {pid}-{k}" for k in range(1, 6)]
    pub_order = list(range(len(pubs)))
    rng.shuffle(pub_order)
    for n, idx in enumerate(pub_order):
        pubs[idx]["journal"] = slots[n] if n < len(slots) else rng.choice(unlisted)

    # Self-citations over the substantive set.
    target_self = round(cfg["self_rate"] * cfg["citations"])
    for p in pubs:
        p["self"] = 0
    cited = [p for p in sub if p["cites"] > 0]
    remaining = target_self
    while remaining > 0:
        p = rng.choice(cited)
        if p["self"] < p["cites"] // 3 + 1 and p["self"] < p["cites"]:
            p["self"] += 1
            remaining -= 1
    for p in pubs:
        if p["kind"] == "other" and p["cites"] > 0:
            p["self"] = rng.randint(0, min(1, p["cites"]))

    # Sort by year for a natural-looking file; ids follow that order.
    pubs.sort(key=lambda p: (p["year"], p["doc_type"], p["cites"]))
    records = []
    for n, p in enumerate(pubs, start=1):
        categories = [UNCOVERED_FIELD] if p["kind"] == "uncovered" else [cfg["field"]]
        if rng.random() < 0.2:
            categories.append(SECOND_FIELD)
        title = f"{rng.choice(VERBS)} {rng.choice(TOPICS)} ({pid}.{n})"
        rec = dict(
            id=f"10.5555/p{pid}.{n:04d}",
            title=title,
            authors=p["authors"],
            year=p["year"],
            doc_type=p["doc_type"],
            journal=p["journal"],
            categories=categories,
            citation_count=p["cites"],
        )
        if cfg["self_mode"] == "counts":
            rec["self_citation_count"] = p["self"]
        else:
            citing = []
            self_slots = set(rng.sample(range(p["cites"]), p["self"])) if p["cites"] else set()
            for c in range(p["cites"]):
                authors = rng.sample(coauthor_pool, rng.randint(1, 4))
                if c in self_slots:
                    authors.insert(rng.randint(0, len(authors)), researcher_spelling())
                citing.append(dict(citing_id=f"C{pid}-{n:04d}-{c:03d}", citing_authors=authors,
                                   citing_year=rng.randint(p["year"], CENSUS)))
            rec["citing_records"] = citing
        records.append((rec, p))

    expected = dict(
        name=cfg["name"],
        census_year=CENSUS,
        total=len(pubs),
        substantive=n_sub,
        types=cfg["types"],
        first_author=cfg["first_author"],
        solo=cfg["solo"],
        first_year=first,
        citations=cfg["citations"],
        self_citations=target_self,
        h=h,
        eligible=cfg["eligible"],
        recent=cfg["recent"],
        uncovered=cfg["uncovered"],
        p_top10=cfg["p_top10"],
        median=cfg["median"],
        njp_covered_pubs=len(slots),
        njp_journals=len(NJP_TABLE[pid]),
    )
    return records, refsets, expected


def write_jsonl(path, cfg, records):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        header = {"researcher": {"name": cfg["name"], "aliases": cfg["spellings"], "census_year": CENSUS}}
        f.write(json.dumps(header, ensure_ascii=False) + "\n")
        for rec, _ in records:
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")


def write_csv(path, records):
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "title", "authors", "year", "doc_type", "journal", "categories", "citation_count",
                    "self_citation_count"])
        for rec, _ in records:
            w.writerow([rec["id"], rec["title"], "; ".join(rec["authors"]), rec["year"], rec["doc_type"],
                        rec["journal"], "; ".join(rec["categories"]), rec["citation_count"],
                        rec.get("self_citation_count", "")])


def ranked_category_rows(category, targets, size):
    """Rows placing each target journal at rank round(1000 * njp); ties share a JIF."""
    by_rank = defaultdict(list)
    for journal, njp in targets:
        by_rank[round(njp * size)].append(journal)
    rows = []
    pos = 1
    filler = 0
    while pos <= size:
        jif = (size + 1 - pos) / 100
        if pos in by_rank:
            for j in by_rank[pos]:
                rows.append((j, category, f"{jif:.3f}"))
            pos += len(by_rank[pos])
        else:
            filler += 1
            rows.append((f"{category} Filler {filler:04d}", category, f"{jif:.3f}"))
            pos += 1
    assert len(rows) == size
    return rows


def main():
    rng = random.Random(20111231)
    combined_refsets = []
    all_expected = {}
    journal_rows = []
    for pid, cfg in PEOPLE.items():
        records, refsets, expected = build_person(pid, cfg, rng)
        write_jsonl(HERE / f"person{pid}.jsonl", cfg, records)
        if pid == 3:
            write_csv(HERE / "person3.csv", records)
        for year, hist in sorted(refsets.items()):
            for count, freq in sorted(hist.items()):
                if freq > 0:
                    combined_refsets.append((cfg["field"], year, count, freq))
        targets = [(f"Person {pid} Journal {j + 1}", njp) for j, (_, njp) in enumerate(NJP_TABLE[pid])]
        journal_rows += ranked_category_rows(cfg["ranked_category"], targets, 1000)
        all_expected[f"person{pid}"] = expected
        if pid == 1:
            with open(HERE / "person1_personal.csv", "w", encoding="utf-8", newline="") as f:
                w = csv.writer(f, lineterminator="\n")
                w.writerow(["id", "title", "year"])
                for n, (rec, _) in enumerate(records):
                    # Every fifth entry lacks an id and has its title re-cased.
                    if n % 5 == 0:
                        w.writerow(["", rec["title"].upper(), rec["year"]])
                    else:
                        w.writerow([rec["id"], rec["title"], rec["year"]])

    # Small two-field profile: every record sits in two categories with reference sets,
    # so first-category and averaged percentiles differ.
    small = []
    for n, year in enumerate(range(2004, 2012), start=1):
        cites = 3 * n + rng.randint(0, 2)
        small.append(dict(id=f"S-{n:02d}", title=f"Wave guiding note {n}", authors=["Ortiz, M.", f"{rng.choice(SURNAMES)}, B."],
                          year=year, doc_type="Article", journal="Person 1 Journal 14", categories=["Optics", "Acoustics"],
                          citation_count=cites, self_citation_count=1))
        for field, scale in (("Optics", 2), ("Acoustics", 5)):
            counts = Counter(rng.randint(0, scale * 12) for _ in range(200))
            for count, freq in sorted(counts.items()):
                combined_refsets.append((field, year, count, freq))
    with open(HERE / "two_fields.jsonl", "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps({"researcher": {"name": "Marta Ortiz", "aliases": ["Ortiz, Marta"], "census_year": CENSUS}}) + "\n")
        for rec in small:
            f.write(json.dumps(rec) + "\n")

    # Worked example: one journal listed in two real-world-sized categories.
    def category_with(category, size, rank):
        rows = []
        for pos in range(1, size + 1):
            jif = (size + 1 - pos) / 100
            name = "Chemistry of Materials" if pos == rank else f"{category} Filler {pos:04d}"
            rows.append((name, category, f"{jif:.3f}"))
        return rows

    journal_rows += category_with("Chemistry, Physical", 134, 14)
    journal_rows += category_with("Materials Science, Multidisciplinary", 231, 13)

    with open(HERE / "refsets.csv", "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["field", "year", "citation_count", "frequency"])
        w.writerows(combined_refsets)
    with open(HERE / "journals.csv", "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["journal", "category", "jif"])
        w.writerows(journal_rows)
    with open(HERE / "expected.json", "w", encoding="utf-8") as f:
        json.dump(all_expected, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
