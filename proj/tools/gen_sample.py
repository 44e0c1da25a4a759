#!/usr/bin/env python3
# Copyright 2026 The unsubx Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/sample_export.csv, the anonymized demo package.

The output is deterministic (fixed seed). Titles are invented. Values are
constructed so that:
  * 431 journals, total weighted usage exactly 400,000
  * every usage cell equals downloads + 10*citations + 100*authorships
  * "Science Advance": price 8,000, usage 2,000, OA 88%, backfile 0%,
    cost-per-use rank 405 of 431
  * "Citing Practice": over 800 citations, the largest Instant Fill share
    (about 2.1 points) at a price just under $20,000
  * about 4% of titles have more than 3 authorships, one has over 12
  * four Mathematics journals: two FALSE, one MAYBE, one TRUE

Usage: tools/gen_sample.py [output-path]
"""

import csv
import math
import random
import sys

SEED = 20211019
N = 431
TOTAL_USAGE = 400_000

HEADER = [
    "issn_l", "issns", "title", "publisher", "subject", "era_subjects",
    "is_society_journal", "subscribed", "usage", "subscription_cost",
    "ill_cost", "cpu", "cpu_rank", "cost", "instant_usage_percent",
    "free_instant_usage_percent", "subscription_minus_ill_cost", "ncppu",
    "ncppu_rank", "downloads", "citations", "authorships", "backfile_percent",
    "bronze_oa_percent", "green_oa_percent", "hybrid_oa_percent",
    "use_groups_if_subscribed", "use_groups_if_not_subscribed",
    "use_groups_oa", "use_groups_backfile", "use_groups_ill",
    "use_groups_other_delayed", "apc_cost", "num_papers", "oa_embargo_months",
]
assert len(HEADER) == 35

SUBJECTS = [
    "Medicine", "Engineering", "Chemistry", "Physics and Astronomy",
    "Computer Science", "Agricultural and Biological Sciences",
    "Environmental Science", "Earth and Planetary Sciences",
    "Materials Science", "Social Sciences", "Psychology", "Neuroscience",
    "Immunology and Microbiology", "Energy", "Business and Management",
    "Arts and Humanities", "Pharmacology", "Chemical Engineering",
    "Decision Sciences", "Veterinary", "Nursing", "Health Professions",
]

FORMS = [
    "Journal of {}", "{} Letters", "Annals of {}", "{} Review",
    "International Journal of {}", "{} Quarterly", "Advances in {}",
    "{} Research", "Frontiers of {}", "{} Reports", "Bulletin of {}",
    "{} Today", "Archives of {}", "{} Communications", "Studies in {}",
]
TOPICS = [
    "Applied Botany", "Soil Dynamics", "Coastal Systems", "Polymer Design",
    "Clinical Imaging", "Rural Sociology", "Marine Ecology", "Food Chemistry",
    "Plant Genomics", "Structural Mechanics", "Urban Hydrology",
    "Cell Signalling", "Veterinary Practice", "Crop Physiology",
    "Data Engineering", "Catalysis", "Thermal Processes", "Child Health",
    "Behavioural Economics", "Animal Nutrition", "Surface Coatings",
    "Wetland Studies", "Optical Materials", "Grain Storage", "Rock Physics",
    "Biofilm Research", "Cognitive Aging", "Rural Nursing", "Wind Energy",
    "Protein Folding", "Dairy Technology", "Water Treatment",
    "Mineral Processing", "Forest Pathology", "Sleep Medicine",
    "Tissue Repair", "Signal Processing", "Weed Control", "Oral Biology",
    "Metal Forming", "Insect Behaviour", "Seed Biology", "Fluid Transport",
    "Molecular Sensing", "Land Use", "Farm Management", "Plasma Chemistry",
    "Viral Evolution", "Risk Analysis", "Cardiac Rhythm", "Nano Devices",
    "Organic Synthesis", "Herd Health", "Glacial Geology", "Fibre Science",
    "Drug Delivery", "Ocean Acoustics", "Fungal Biology", "Turf Science",
    "Lipid Research", "Ceramic Engineering", "Stream Ecology",
    "Pain Management", "Welding Practice", "Poultry Science",
]
MATH_TITLES = [
    "Journal of Discrete Structures", "Numerical Methods Letters",
    "Annals of Pure Algebra", "Topology Quarterly",
]
SPECIAL = {"Science Advance", "Citing Practice", "Scholar Trends"}


def fmt(x):
    if isinstance(x, int):
        return str(x)
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def main():
    out_path = sys.argv[1] if len(sys.argv) > 1 else "data/sample_export.csv"
    rng = random.Random(SEED)

    titles = set(MATH_TITLES) | SPECIAL
    ordinary_titles = []
    while len(ordinary_titles) < N - len(MATH_TITLES) - len(SPECIAL):
        t = rng.choice(FORMS).format(rng.choice(TOPICS))
        if t in titles:
            continue
        titles.add(t)
        ordinary_titles.append(t)
    ordinary_titles = MATH_TITLES + ordinary_titles
    assert not any("science adv" in t.lower() for t in ordinary_titles)

    # Authorship projections: 16 ordinary titles above 3, one of them above 12.
    n_ord = len(ordinary_titles)
    heavy = set(rng.sample(range(len(MATH_TITLES), n_ord), 16))
    outlier = min(heavy)

    recs = []
    for i, title in enumerate(ordinary_titles):
        if i == outlier:
            auth = 12.75
        elif i in heavy:
            auth = rng.choice([3.25, 3.5, 3.75, 4.0, 4.5, 5.0, 5.75, 6.5, 7.25])
        else:
            auth = min(3.0, round(rng.expovariate(1.4) * 4) / 4)
        downloads = max(20, int(rng.lognormvariate(5.6, 0.9)))
        citations = round(max(0.0, downloads * rng.uniform(0.02, 0.25)
                              + rng.gauss(0, 8)) * 2) / 2
        recs.append(dict(title=title, downloads=downloads, citations=citations,
                         authorships=auth))

    specials = [
        dict(title="Science Advance", downloads=600, citations=60.0,
             authorships=8.0, oa=88.0, backfile=0.0, price=8000,
             status="TRUE", subject="Chemistry; Materials Science"),
        dict(title="Citing Practice", downloads=1450, citations=846.0,
             authorships=1.0, oa=12.0, backfile=4.0, price=19850,
             status="TRUE", subject="Social Sciences"),
        dict(title="Scholar Trends", downloads=310, citations=22.5,
             authorships=0.5, oa=41.5, backfile=12.0, price=2140,
             status="", subject="Social Sciences; Arts and Humanities"),
    ]

    def usage_of(r):
        return r["downloads"] + 10 * r["citations"] + 100 * r["authorships"]

    # Rescale ordinary downloads so that the package total is exact.
    fixed = sum(usage_of(s) for s in specials)
    rest = sum(10 * r["citations"] + 100 * r["authorships"] for r in recs)
    want_dl = TOTAL_USAGE - fixed - rest
    have_dl = sum(r["downloads"] for r in recs)
    for r in recs:
        r["downloads"] = max(20, int(round(r["downloads"] * want_dl / have_dl)))
    # Absorb the rounding residue in small steps over the largest titles.
    residue = TOTAL_USAGE - fixed - sum(usage_of(r) for r in recs)
    order = sorted(range(n_ord), key=lambda k: -recs[k]["downloads"])
    k = 0
    while residue != 0:
        step = 1 if residue > 0 else -1
        r = recs[order[k % 50]]
        if r["downloads"] + step >= 1:
            r["downloads"] += step
            residue -= step
        k += 1
    for r in recs:
        r["usage"] = usage_of(r)
        assert r["usage"] < 7000
    for s in specials:
        s["usage"] = usage_of(s)
    assert specials[0]["usage"] == 2000
    assert sum(r["usage"] for r in recs) + fixed == TOTAL_USAGE

    # Cost-per-use targets: 402 ordinary titles cheaper than $4/use, 26 dearer,
    # which puts Science Advance (exactly $4/use) at rank 405.
    dear = set(rng.sample(range(n_ord), 26))
    for i, r in enumerate(recs):
        while True:
            if i in dear:
                target = 4.2 + rng.expovariate(1 / 6.0)
            else:
                target = min(3.85, rng.lognormvariate(0.0, 0.7))
            price = max(50, int(round(r["usage"] * target)))
            cpu = price / r["usage"]
            if (i in dear and cpu > 4.05) or (i not in dear and cpu < 3.95):
                break
        r["price"] = price
        oa = round(rng.uniform(0, 80) if rng.random() < 0.9 else rng.uniform(80, 95), 1)
        r["oa"] = oa
        r["backfile"] = round(min(100 - oa, rng.uniform(0, 35)), 1)

    all_recs = recs + specials
    for r in all_recs:
        r["cpu"] = r["price"] / r["usage"]
    ranked = sorted(all_recs, key=lambda r: (r["cpu"], r["title"]))
    for rank, r in enumerate(ranked, start=1):
        r["cpu_rank"] = rank
    assert specials[0]["cpu_rank"] == 405, specials[0]["cpu_rank"]

    # Current-year usage of Citing Practice must dominate the package.
    def current_year(r):
        return (100 - (r["oa"] + r["backfile"])) * r["usage"] / 100
    top = max(all_recs, key=current_year)
    assert top["title"] == "Citing Practice"

    for r in recs:
        rank = r["cpu_rank"]
        u = rng.random()
        if u < 0.04:
            r["status"] = "MAYBE"
        elif u < 0.12:
            r["status"] = ""
        elif rank > 300 or r["usage"] < 120:
            r["status"] = "FALSE"
        else:
            r["status"] = "TRUE"
        r["subject"] = rng.choice(SUBJECTS)
        if rng.random() < 0.12:
            second = rng.choice(SUBJECTS)
            if second != r["subject"]:
                r["subject"] = r["subject"] + "; " + second
    for r, status in zip(recs[:4], ["FALSE", "FALSE", "MAYBE", "TRUE"]):
        r["subject"] = "Mathematics"
        r["status"] = status

    # Interleave the three named titles into the body of the file.
    rows = list(recs)
    rows.insert(57, specials[0])
    rows.insert(12, specials[1])
    rows.insert(230, specials[2])
    assert len(rows) == N

    by_ncppu = sorted(rows, key=lambda r: (r["price"] - r["usage"] * 17.0 * 0.3) / r["usage"])
    for i, r in enumerate(by_ncppu, start=1):
        r["ncppu_rank"] = i

    with open(out_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        for r in rows:
            ill = round(r["usage"] * 0.3 * 17.0, 2)
            inst = round(min(100.0, r["oa"] + r["backfile"]
                             + (100 - r["oa"] - r["backfile"]) * 0.1), 1)
            bronze = round(r["oa"] * 0.2, 1)
            green = round(r["oa"] * 0.5, 1)
            hybrid = round(r["oa"] - bronze - green, 1)
            w.writerow([
                "", "", r["title"], "Sample Publisher", r["subject"], "",
                "True" if rng.random() < 0.2 else "False", r["status"],
                fmt(r["usage"]), fmt(r["price"]), fmt(ill), fmt(r["cpu"]),
                r["cpu_rank"], fmt(r["price"]), fmt(inst), fmt(r["oa"]),
                fmt(round(r["price"] - ill, 2)),
                fmt(round((r["price"] - ill) / r["usage"], 4)), r["ncppu_rank"],
                r["downloads"], fmt(r["citations"]), fmt(r["authorships"]),
                fmt(r["backfile"]), fmt(bronze), fmt(green), fmt(hybrid),
                fmt(round(r["usage"], 1)),
                fmt(round(r["usage"] * (r["oa"] + r["backfile"]) / 100, 1)),
                fmt(round(r["usage"] * r["oa"] / 100, 1)),
                fmt(round(r["usage"] * r["backfile"] / 100, 1)),
                fmt(round(r["usage"] * 0.03, 1)), "0",
                fmt(rng.choice([0, 1500, 2200, 3100])),
                int(max(1, r["downloads"] / 40)), rng.choice([0, 0, 6, 12]),
            ])


if __name__ == "__main__":
    main()
