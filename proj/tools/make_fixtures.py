#!/usr/bin/env python3
"""Regenerate the files under fixtures/.

Values are synthetic. Output is deterministic for a given seed.
"""
import argparse
import csv
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

INDICATORS = {
    "A": [("GDP growth", "+"), ("Employment rate", "+"), ("Hosting cost", "-"), ("Event revenue", "+"),
          ("Tourism income", "+"), ("Infrastructure investment", "+")],
    "B": [("Athlete satisfaction", "+"), ("Audience satisfaction", "+"), ("Resident satisfaction", "+"),
          ("Volunteer participation", "+"), ("Venue utilization rate", "ideal"), ("Public health index", "+"),
          ("Resident displacement", "-")],
    "C": [("Project execution capacity", "+"), ("Olympic spirit promotion", "+"), ("International image", "+"),
          ("Income inequality", "-"), ("Cultural exchange", "+"), ("Urban renewal", "+"), ("Media exposure", "+")],
    "D": [("Regional governance", "+"), ("International relations", "+"), ("Policy stability", "+"),
          ("Public security", "+"), ("Diplomatic influence", "+")],
    "E": [("Environmental protection", "+"), ("Waste generation", "-"), ("Carbon emissions", "-"),
          ("Green space", "+"), ("Air quality", "+")],
}
UNITS = {"A1": "%", "A2": "%", "A3": "bn USD", "A4": "bn USD", "A5": "bn USD", "A6": "bn USD",
         "B5": "ratio", "C4": "gini", "E2": "kt", "E3": "Mt CO2e", "E4": "%"}

# 44 distinct cities from the potential-host table (Moscow appears twice there) plus Pyeongchang.
CANDIDATES = [
    ("New York", "USA"), ("Tokyo Metropolitan Area", "Japan"), ("Los Angeles", "USA"), ("Shanghai", "China"),
    ("London", "UK"), ("Paris", "France"), ("Beijing", "China"), ("Chicago", "USA"), ("Philadelphia", "USA"),
    ("Shenzhen", "China"), ("Seoul", "South Korea"), ("Moscow", "Russia"), ("Osaka", "Japan"),
    ("Mumbai", "India"), ("Delhi", "India"), ("Birmingham", "UK"), ("Berlin", "Germany"),
    ("Frankfurt", "Germany"), ("Lyon", "France"), ("Turin", "Italy"), ("Rome", "Italy"), ("Toronto", "Canada"),
    ("Calgary", "Canada"), ("Busan", "South Korea"), ("Brasília", "Brazil"), ("Sydney", "Australia"),
    ("Madrid", "Spain"), ("Mexico City", "Mexico"), ("Jakarta", "Indonesia"), ("Amsterdam", "Netherlands"),
    ("Riyadh", "Saudi Arabia"), ("Ankara", "Turkey"), ("Bern", "Switzerland"), ("Warsaw", "Poland"),
    ("Stockholm", "Sweden"), ("Brussels", "Belgium"), ("Bangkok", "Thailand"), ("Dublin", "Ireland"),
    ("Jerusalem", "Israel"), ("Buenos Aires", "Argentina"), ("Oslo", "Norway"), ("Vienna", "Austria"),
    ("Abuja", "Nigeria"), ("Copenhagen", "Denmark"), ("Pyeongchang", "South Korea"),
]
# Cities that do not clear the GDP and sports screen.
NON_CANDIDATES = [
    ("Lagos", "Nigeria"), ("Dhaka", "Bangladesh"), ("Lima", "Peru"), ("Nairobi", "Kenya"), ("Hanoi", "Vietnam"),
    ("Karachi", "Pakistan"), ("Quito", "Ecuador"), ("Tashkent", "Uzbekistan"), ("Accra", "Ghana"),
    ("Kathmandu", "Nepal"), ("La Paz", "Bolivia"), ("Colombo", "Sri Lanka"),
]
# Kept after geography pre-elimination; only the first three satisfy the February rules through 2050.
WINTER_SHORTLIST = {
    # name: (temp start, temp yearly drift, snow start, snow yearly ratio)
    "Moscow": (-7.8, 0.04, 46.0, 0.996),
    "Pyeongchang": (-6.9, 0.03, 41.0, 0.997),
    "Calgary": (-5.6, 0.02, 38.0, 0.998),
    "Oslo": (-3.6, 0.09, 31.0, 0.985),
    "Stockholm": (-2.4, 0.08, 27.0, 0.990),
    "Toronto": (-4.9, 0.07, 24.0, 0.992),
    "Turin": (3.1, 0.03, 9.0, 0.990),
    "Vienna": (0.9, 0.05, 14.0, 0.990),
    "Chicago": (-3.2, 0.06, 26.0, 0.994),
}
# Rough all-time Summer Games tallies by country (gold, silver, bronze).
MEDALS = {
    "USA": (1061, 830, 738), "Russia": (395, 319, 296), "UK": (285, 316, 315), "China": (263, 199, 174),
    "France": (223, 251, 277), "Italy": (217, 188, 213), "Germany": (201, 207, 247), "Japan": (169, 150, 178),
    "Australia": (164, 173, 210), "Sweden": (148, 176, 179), "Netherlands": (95, 105, 122),
    "South Korea": (96, 91, 100), "Canada": (71, 109, 146), "Poland": (68, 84, 133), "Norway": (61, 51, 49),
    "Denmark": (48, 78, 79), "Switzerland": (53, 79, 74), "Spain": (48, 72, 49), "Turkey": (41, 27, 36),
    "Belgium": (44, 56, 57), "Brazil": (37, 42, 71), "Austria": (20, 35, 41), "Argentina": (21, 26, 30),
    "Mexico": (13, 24, 36), "Thailand": (10, 8, 17), "Indonesia": (8, 14, 15), "Ireland": (11, 8, 16),
    "India": (10, 9, 16), "Israel": (3, 1, 9), "Nigeria": (3, 11, 13), "Saudi Arabia": (0, 2, 2),
}
WINTER_ANCHORS = {"Moscow": (0.6, 0.781), "Pyeongchang": (0.8, 0.802), "Calgary": (0.8, 0.849)}
FEATURES = ["A5", "A4", "C1", "C7", "A2", "E4", "B2", "D2", "C3", "D5"]
GAMMA = [0.165, 0.146, 0.132, 0.124, 0.105, 0.088, 0.082, 0.071, 0.059, 0.030]
SAATY = [Fraction(1, k) for k in range(9, 1, -1)] + [Fraction(k) for k in range(1, 10)]


def ids():
    return [f"{c}{i + 1}" for c, items in INDICATORS.items() for i in range(len(items))]


def saaty_round(ratio):
    return min(SAATY, key=lambda s: abs(np.log(float(s)) - np.log(ratio)))


def judgment(priorities):
    n = len(priorities)
    rows = [["1"] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            s = saaty_round(priorities[i] / priorities[j])
            rows[i][j] = str(s)
            rows[j][i] = str(1 / s)
    return rows


def consistency_ratio(rows):
    ri = [0, 0, 0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45]
    a = np.array([[float(Fraction(x)) for x in r] for r in rows])
    n = len(a)
    if n <= 2:
        return 0.0
    lam = max(np.linalg.eigvals(a).real)
    return (lam - n) / (n - 1) / ri[n]


def hierarchy():
    specs = []
    for cat, items in INDICATORS.items():
        for i, (name, pol) in enumerate(items):
            spec = {"id": f"{cat}{i + 1}", "name": name, "polarity": "-" if pol == "-" else "+"}
            if pol == "ideal":
                spec["ideal_interval"] = [0.6, 0.85]
            specs.append(spec)
    return {"reduced": False, "indicators": specs, "primary_weights": {c: 0.2 for c in INDICATORS}}


def judgments(rng):
    levels = {"criteria": judgment([0.30, 0.16, 0.22, 0.14, 0.18])}
    for cat, items in INDICATORS.items():
        levels[cat] = judgment(list(rng.uniform(1.0, 6.0, size=len(items))))
    for name, rows in levels.items():
        cr = consistency_ratio(rows)
        assert cr < 0.1, (name, cr)
    return {"levels": levels}


def decision_matrix(rng, cities):
    cols = ids()
    scale = {c: rng.uniform(0.5, 50.0) for c in cols}
    scale["B5"] = 1.0
    rows = []
    for name, _ in cities:
        vals = []
        for c in cols:
            if c == "B5":
                vals.append(round(rng.uniform(0.35, 0.98), 4))
            elif c in ("A1", "A2", "E4"):
                vals.append(round(scale[c] * rng.uniform(0.2, 1.0), 4))
            else:
                vals.append(round(scale[c] * rng.lognormal(0.0, 0.45), 4))
        rows.append((name, vals))
    return cols, rows


def climate(rng, name):
    t0, drift, s0, ratio = WINTER_SHORTLIST[name]
    years = 10
    temp = [round(t0 + drift * k + rng.normal(0.0, 0.08), 2) for k in range(years)]
    snow = [round(s0 * ratio**k * (1.0 + rng.normal(0.0, 0.01)), 1) for k in range(years)]
    return {"feb_temp": {"start": 2014, "values": temp}, "feb_snow": {"start": 2014, "values": snow}}


def pool(rng, cities, extras):
    out = []
    for rank, (name, country) in enumerate(cities):
        gdp = round(float(rng.uniform(0.35, 3.0)) * (1.0 + 0.02 * (45 - rank)), 3)
        gold, silver, bronze = MEDALS[country]
        entry = {"name": name, "country": country, "gdp": gdp, "sports_score": round(5 * gold + silver + 0.5 * bronze, 1),
                 "medals": {"gold": gold, "silver": silver, "bronze": bronze}}
        if name in WINTER_SHORTLIST:
            entry["climate"] = climate(rng, name)
        out.append(entry)
    for name, country in extras:
        out.append({"name": name, "country": country, "gdp": round(float(rng.uniform(0.02, 0.25)), 3),
                    "sports_score": round(float(rng.uniform(1.0, 40.0)), 1)})
    return {"cities": out}


def plans():
    impacts = {
        "Original": [3, 3, 1, 3, 1, 1, 3, 1, 3, 1],
        "A": [5, 7, 5, 3, 5, 5, 3, 5, 5, 3],
        "B": [7, 7, 5, 7, 5, 3, 5, 5, 5, 3],
        "C": [5, 5, 3, 7, 3, 1, 5, 3, 3, 5],
        "D": [7, 9, 5, 7, 7, 5, 5, 5, 7, 3],
    }
    text = {
        "Original": "Rotating host city, Summer and Winter Games every four years",
        "A": "Permanent venues for the Summer and Winter Games, unchanged calendar",
        "B": "Four seasonal Games per cycle, each with a fixed venue",
        "C": "Four seasonal Games per cycle, no fixed venues",
        "D": "Four seasonal Games per cycle, fixed venues for Summer and Winter only",
    }
    return {"plans": [{"id": k, "description": text[k], "impacts": dict(zip(FEATURES, v))} for k, v in impacts.items()]}


def swot():
    return {"records": [
        {"city": "Beijing",
         "strengths": ["Venues from 2008 and 2022 still in service", "Large volunteer base"],
         "weaknesses": ["Summer heat and humidity", "Air quality episodes"],
         "opportunities": ["First city to host three Games", "Regional transport links"],
         "threats": ["Rising security costs", "Public scrutiny of spending"]},
        {"city": "Los Angeles",
         "strengths": ["Existing stadiums and university venues", "Private funding model"],
         "weaknesses": ["Traffic congestion"],
         "opportunities": ["Media market reach"],
         "threats": ["Wildfire season", "Housing pressure"]},
        {"city": "London",
         "strengths": ["Legacy park from 2012", "Transit network"],
         "weaknesses": ["High construction costs"],
         "opportunities": ["Tourism growth"],
         "threats": ["Budget overruns"]},
        {"city": "Paris",
         "strengths": ["Recent hosting experience", "Compact venue plan"],
         "weaknesses": ["Crowding in the centre"],
         "opportunities": ["River and landmark venues"],
         "threats": ["Labour disputes"]},
    ]}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)

    def dump(name, obj):
        (out / name).write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")

    dump("hierarchy.json", hierarchy())
    levels = judgments(rng)["levels"]
    body = ",\n".join(
        f'    "{k}": [\n' + ",\n".join("      " + json.dumps(r) for r in rows) + "\n    ]" for k, rows in levels.items())
    (out / "judgments.json").write_text('{\n  "levels": {\n' + body + "\n  }\n}\n", encoding="utf-8")
    cols, rows = decision_matrix(rng, CANDIDATES)
    with open(out / "decision_matrix.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["label"] + cols)
        w.writerow(["#units"] + [UNITS.get(c, "score") for c in cols])
        for name, vals in rows:
            w.writerow([name] + vals)
    dump("pool.json", pool(rng, CANDIDATES, []))
    dump("world_pool.json", pool(np.random.default_rng(args.seed + 1), CANDIDATES, NON_CANDIDATES))
    dump("plans.json", plans())
    dump("swot.json", swot())

    excluded = [c for c, _ in CANDIDATES if c not in WINTER_SHORTLIST]
    assert len(excluded) == 36
    features = {"ids": FEATURES, "gamma": GAMMA, "normalize": True, "coverage": 0.735}
    common = {"seed": 20240917, "hierarchy": "hierarchy.json", "judgments": "judgments.json",
              "decision_matrix": "decision_matrix.csv", "plans": "plans.json", "swot": "swot.json",
              "weighting": {"mode": "per-category", "features": 10},
              "sensitivity": {"n_swap": 5, "trials": 100},
              "rsm": {"alternative": "Calgary", "delta": 0.5, "center_replicates": 3}}
    winter = {"exclude": excluded, "until": 2050,
              "requirement": {"max_feb_temp": 0.0, "ideal_low": -17.0, "ideal_high": -10.0, "min_feb_snow": 30.0},
              "s_base": {k: v[0] for k, v in WINTER_ANCHORS.items()},
              "s_evaluate": {k: v[1] for k, v in WINTER_ANCHORS.items()}}
    dump("config.json", {**common, "pool": "pool.json", "features": features, "winter": winter})
    dump("config_computed.json", {**common, "pool": "pool.json",
                                  "winter": {**winter, "s_evaluate": {}}})
    summer_base = {c: 0.7 for c, _ in CANDIDATES}
    summer_base.update({"Beijing": 1.0, "Los Angeles": 0.95, "London": 0.9, "Paris": 0.9})
    dump("config_summer.json", {**common, "pool": "world_pool.json", "features": features,
                                "summer": {"gdp_cutoff": {"value": 0.3}, "sports_cutoff": {"value": 50},
                                           "min_medal_points": 1400, "finalists": 4, "s_base": summer_base}})


if __name__ == "__main__":
    main()
