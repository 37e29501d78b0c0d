#!/usr/bin/env python3
"""Regenerate the bundled word vectors and mini collection under data/.

Deterministic: fixed seeds, values rounded before writing.
"""
import json
import pathlib

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

AXES = ["health", "death", "economy", "politics", "war", "up", "down", "high",
        "low", "steady", "volatile", "education", "population", "geo", "history",
        "disease"]
A = {name: i for i, name in enumerate(AXES)}

VOCAB = {
    "life": {"health": 1.0},
    "expectancy": {"health": 0.8, "population": 0.3},
    "longevity": {"health": 0.95},
    "lifespan": {"health": 0.95},
    "lifetime": {"health": 0.9},
    "survival": {"health": 0.8, "death": 0.2},
    "health": {"health": 0.8, "disease": 0.3},
    "age": {"health": 0.6, "population": 0.3},
    "death": {"death": 1.0},
    "mortality": {"death": 0.9, "health": 0.2},
    "dying": {"death": 0.9},
    "casualty": {"death": 0.7, "war": 0.5},
    "child": {"population": 0.8, "death": 0.3},
    "infant": {"population": 0.7, "death": 0.4},
    "birth": {"population": 0.8},
    "fertility": {"population": 0.8, "health": 0.2},
    "population": {"population": 1.0},
    "people": {"population": 0.7},
    "income": {"economy": 1.0},
    "person": {"population": 0.5, "economy": 0.3},
    "wealth": {"economy": 0.9},
    "gdp": {"economy": 0.9},
    "economy": {"economy": 0.9},
    "poverty": {"economy": 0.7, "low": 0.3},
    "money": {"economy": 0.8},
    "wage": {"economy": 0.8, "population": 0.2},
    "democracy": {"politics": 1.0},
    "index": {"economy": 0.3, "politics": 0.3, "history": 0.2},
    "government": {"politics": 0.9},
    "election": {"politics": 0.8},
    "monarchy": {"politics": 0.8, "history": 0.3},
    "revolution": {"politics": 0.6, "war": 0.5},
    "constitution": {"politics": 0.8},
    "freedom": {"politics": 0.8},
    "vote": {"politics": 0.8},
    "slavery": {"politics": 0.5, "war": 0.3, "history": 0.3},
    "abolition": {"politics": 0.6, "history": 0.3},
    "lincoln": {"politics": 0.6, "war": 0.4},
    "confederate": {"war": 0.8, "politics": 0.3},
    "literacy": {"education": 1.0},
    "rate": {"economy": 0.3, "education": 0.3, "population": 0.3},
    "school": {"education": 0.9},
    "education": {"education": 1.0},
    "reading": {"education": 0.8},
    "war": {"war": 1.0},
    "civil": {"war": 0.6, "politics": 0.4},
    "battle": {"war": 0.9},
    "conflict": {"war": 0.9},
    "army": {"war": 0.8},
    "soldier": {"war": 0.8, "death": 0.2},
    "famine": {"death": 0.6, "disease": 0.4, "low": 0.2},
    "epidemic": {"disease": 1.0},
    "pandemic": {"disease": 1.0},
    "influenza": {"disease": 0.9},
    "flu": {"disease": 0.9},
    "disease": {"disease": 0.9, "health": 0.2},
    "cholera": {"disease": 0.9},
    "ascending": {"up": 1.0},
    "increase": {"up": 0.95},
    "rise": {"up": 0.9, "high": 0.2},
    "growth": {"up": 0.9, "economy": 0.2},
    "growing": {"up": 0.9},
    "improve": {"up": 0.8, "health": 0.1},
    "climb": {"up": 0.85},
    "descending": {"down": 1.0},
    "decrease": {"down": 0.95},
    "decline": {"down": 0.9, "low": 0.2},
    "fall": {"down": 0.9, "low": 0.2},
    "drop": {"down": 0.85, "low": 0.3},
    "reduction": {"down": 0.8},
    "shrink": {"down": 0.8},
    "peak": {"high": 1.0},
    "spike": {"high": 0.9, "volatile": 0.2},
    "high": {"high": 0.85},
    "maximum": {"high": 0.85},
    "surge": {"high": 0.8, "up": 0.3},
    "summit": {"high": 0.8},
    "valley": {"low": 1.0},
    "dip": {"low": 0.9, "down": 0.2},
    "trough": {"low": 0.9},
    "low": {"low": 0.85},
    "minimum": {"low": 0.85},
    "slump": {"low": 0.8, "down": 0.3},
    "stable": {"steady": 1.0},
    "steady": {"steady": 0.9},
    "constant": {"steady": 0.9},
    "unstable": {"volatile": 1.0},
    "volatile": {"volatile": 0.9},
    "fluctuation": {"volatile": 0.9},
    "erratic": {"volatile": 0.85},
    "turbulent": {"volatile": 0.8, "war": 0.2},
    "irregular": {"volatile": 0.8},
    "swing": {"volatile": 0.8},
    "year": {"history": 0.9},
    "decade": {"history": 0.9},
    "century": {"history": 0.9},
    "history": {"history": 1.0},
    "period": {"history": 0.8},
    "era": {"history": 0.85},
    "historical": {"history": 0.9},
}

PLACES = ["united", "state", "nation", "country", "america", "american", "usa",
          "north", "south", "europe", "european", "asia", "russia", "russian",
          "soviet", "sweden", "swedish", "britain", "british", "kingdom",
          "england", "france", "french", "germany", "german", "brazil", "japan",
          "india", "china", "canada", "mexico", "chile", "norway", "belarus",
          "ukraine", "continent", "region"]

YEARS = list(range(1800, 1951))

COUNTRIES = ["United States", "United Kingdom", "Sweden", "Norway", "France",
             "Germany", "Russia", "Belarus", "Ukraine", "Brazil", "Mexico",
             "Chile", "Japan", "India", "China", "Canada"]


def embeddings():
    rng = np.random.default_rng(7)
    rows = []
    for word, axes in VOCAB.items():
        v = rng.normal(0.0, 0.08, len(AXES))
        for name, w in axes.items():
            v[A[name]] += w
        rows.append((word, v))
    for word in PLACES:
        v = rng.normal(0.0, 0.12, len(AXES))
        v[A["geo"]] += 0.9
        rows.append((word, v))
    with open(DATA / "embeddings.txt", "w") as out:
        for word, v in rows:
            out.write(word + " " + " ".join(f"{x:.4f}" for x in v) + "\n")


def bump(years, center, half, depth):
    """Symmetric triangular dip (negative depth) or bump centred on a year."""
    t = np.abs(np.asarray(years, dtype=float) - center)
    return np.where(t <= half, depth * (1.0 - t / (half + 1.0)), 0.0)


def life_expectancy(rng):
    table = {}
    for i, c in enumerate(COUNTRIES):
        base = 28.0 + 2.0 * i % 9 + np.linspace(0, 30 + i % 5, len(YEARS))
        noise = rng.normal(0.0, 0.6, len(YEARS))
        v = base + noise + bump(YEARS, 1918, 1, -8.0)
        if c == "United States":
            v = v + bump(YEARS, 1863, 3, -12.0)
            # flat core so the civil war dip reads as a clean symmetric valley
            core = [YEARS.index(y) for y in range(1860, 1867)]
            mid = 0.5 * (v[core[0] - 1] + v[core[-1] + 1])
            for k, y in zip(core, range(1860, 1867)):
                v[k] = mid - 12.0 * (1.0 - abs(y - 1863) / 4.0)
        if c in ("Russia", "Belarus", "Ukraine"):
            v = v + bump(YEARS, 1919, 5, -14.0) + bump(YEARS, 1933, 2, -10.0)
        if c == "Sweden":
            v = v + bump(YEARS, 1868, 1, -5.0)
        if c == "India":
            v = v + bump(YEARS, 1877, 2, -9.0)
        table[c] = v
    return table


def child_mortality(rng, life):
    return {c: 700.0 - 9.0 * v + rng.normal(0.0, 6.0, len(YEARS)) for c, v in life.items()}


def democracy(rng):
    table = {}
    for i, c in enumerate(COUNTRIES):
        v = -6.0 + np.linspace(0, 8 + i % 4, len(YEARS)) + rng.normal(0.0, 0.4, len(YEARS))
        if c == "Russia":
            v = v + bump(YEARS, 1919, 3, 7.0)
        if c == "France":
            v = v + bump(YEARS, 1848, 2, 5.0) + bump(YEARS, 1871, 1, 4.0)
        table[c] = np.clip(v, -10, 10)
    return table


def income(rng):
    table = {}
    for i, c in enumerate(COUNTRIES):
        v = 800.0 * np.exp(np.linspace(0, 1.2 + 0.1 * (i % 6), len(YEARS)))
        v = v * (1.0 + rng.normal(0.0, 0.02, len(YEARS)))
        v = v + bump(YEARS, 1932, 3, -900.0)
        table[c] = v
    return table


def write_csv(path, table, decimals):
    with open(path, "w") as out:
        out.write("country," + ",".join(str(y) for y in YEARS) + "\n")
        for c in COUNTRIES:
            out.write(c + "," + ",".join(f"{x:.{decimals}f}" for x in table[c]) + "\n")


def collection():
    rng = np.random.default_rng(1860)
    coll = DATA / "collection"
    coll.mkdir(exist_ok=True)
    life = life_expectancy(rng)
    write_csv(coll / "life_expectancy.csv", life, 2)
    write_csv(coll / "child_mortality.csv", child_mortality(rng, life), 1)
    write_csv(coll / "democracy_index.csv", democracy(rng), 2)
    write_csv(coll / "income_per_person.csv", income(rng), 0)
    manifest = {
        "id": "gapminder-mini",
        "datasets": {
            "Life Expectancy": "life_expectancy.csv",
            "Child Mortality": "child_mortality.csv",
            "Democracy Index": "democracy_index.csv",
            "Income Per Person": "income_per_person.csv",
        },
    }
    (coll / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    embeddings()
    collection()
