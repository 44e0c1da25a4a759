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
"""Independent worksheet for tests/data/fixture10.csv.

Recomputes every derived value of the 10-row fixture straight from the CSV
cells with the standard csv module and exact rational arithmetic where the
result is a count. The printed table is frozen into tests/fixture_oracle.hpp;
rerun this script and diff if the fixture ever changes.
"""

import csv
import math
import os
import sys
from fractions import Fraction

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURE = os.path.join(HERE, "..", "data", "fixture10.csv")


def money(cell):
    return float(cell.replace("$", "").replace(",", "").strip())


def main():
    with open(FIXTURE, newline="") as fh:
        rows = list(csv.DictReader(fh))

    seen = {}
    out = []
    for r in rows:
        title = r["title"]
        if r["issn"]:
            key = r["issn"]
        else:
            slug = "".join(ch.lower() if ch.isalnum() else " " for ch in title)
            slug = "-".join(slug.split())
            seen[slug] = seen.get(slug, 0) + 1
            key = f"{slug}-{seen[slug]}"
        d = float(r["downloads"])
        c = float(r["citations"])
        a = float(r["authorships"])
        usage = d + 10 * c + 100 * a
        price = money(r["subscription_cost"])
        oa = float(r["free_instant_usage_percent"])
        bf = float(r["backfile_percent"])
        status = r["subscribed"].strip().upper() or "BLANK"
        out.append(dict(key=key, title=title, price=price, d=d, c=c, a=a,
                        usage=usage, oa=oa, bf=bf, status=status,
                        cpu=(Fraction(int(price)) / Fraction(int(usage))) if usage else None,
                        subject=r["subject"]))

    total = 0.0
    for o in out:
        total += o["usage"]
    print(f"total_weighted_usage = {total!r}")

    pkg_if = 0.0
    for o in out:
        remaining = max(0.0, 100 - (o["oa"] + o["bf"]))
        cy = remaining * o["usage"] / 100
        if_pct = 100 * cy / total
        o["cy"], o["if"] = cy, if_pct
        pkg_if += if_pct
        o["norm"] = o["price"] / if_pct if if_pct > 0 else None
    print(f"package_if_percent = {pkg_if!r}")

    order = sorted(out, key=lambda o: (o["cpu"] is None, o["cpu"] or 0, o["title"], o["key"]))
    for rank, o in enumerate(order, start=1):
        o["rank"] = rank

    print("key | usage | current_year | if_percent | normalized | rank")
    for o in out:
        print(f'{o["key"]!r} | {o["usage"]!r} | {o["cy"]!r} | {o["if"]!r} | '
              f'{o["norm"]!r} | {o["rank"]}')

    print("summary (status: count, dollars)")
    for s in ["TRUE", "FALSE", "MAYBE", "BLANK"]:
        sel = [o for o in out if o["status"] == s]
        print(f"  {s}: {len(sel)}, {sum(o['price'] for o in sel)!r}")

    print("bounds (min, max)")
    for name, get in [("price", "price"), ("downloads", "d"), ("citations", "c"),
                      ("authorships", "a"), ("usage", "usage"), ("oa_percent", "oa"),
                      ("cpu_rank", "rank")]:
        vals = [o[get] for o in out]
        print(f"  {name}: {min(vals)!r}, {max(vals)!r}")

    print("zero usage:", [o["key"] for o in out if o["usage"] == 0])

    # Equal-width histogram, half-open except the last bin, exact arithmetic.
    vals = [Fraction(str(o["a"])) for o in out]
    lo, hi = min(vals), max(vals)
    width = (hi - lo) / 10
    counts = [0] * 10
    for v in vals:
        k = min(9, math.floor((v - lo) / width))
        counts[k] += 1
    print("authorship bins(10):", counts)

    cpus = [(o["cpu"], o) for o in out if o["cpu"] is not None]
    clo = min(c for c, _ in cpus)
    chi = max(c for c, _ in cpus)
    cw = (chi - clo) / 10
    boxes = [0] * 10
    for c, _ in cpus:
        boxes[min(9, math.floor((c - clo) / cw))] += 1
    print("cpu boxes(10):", boxes, "undefined:", sum(1 for o in out if o["cpu"] is None))

    subj = {}
    for o in out:
        parts = o["subject"].split(";") if ";" in o["subject"] else o["subject"].split(",")
        parts = [p.strip() for p in parts if p.strip()] or ["Unclassified"]
        for p in parts:
            subj[p] = subj.get(p, 0) + 1
    print("subjects:", dict(sorted(subj.items())), "pairs:", sum(subj.values()))


if __name__ == "__main__":
    sys.exit(main())
