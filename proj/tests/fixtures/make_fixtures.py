#!/usr/bin/env python3
"""Regenerates the checked-in test fixtures.

Outputs are deterministic; run from this directory after editing the tables
below, then re-run the test suite. The expected-count table written here is
derived from the assignment plan, independently of the C++ matcher.
"""

import csv
import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

# --- 87-record funnel fixture -------------------------------------------------

PASSING = dict(
    year="2019",
    doc_type="article",
    source_type="journal",
    pub_stage="final",
    language="en",
    full_text_accessible="true",
    sdg_relevant="yes",
)

# (stage, overrides) — each excluded record fails exactly one stage.
EXCLUSIONS = (
    [("year", {"year": y}) for y in ("2014", "2015", "2013", "2015", "2014", "2010")]
    + [("doc_type", {"doc_type": d})
       for d in ("review", "book-chapter", "editorial", "note", "erratum")]
    + [("source_type", {"source_type": s})
       for s in ("book-series", "trade-journal", "report", "book")]
    + [("pub_stage", {"pub_stage": p})
       for p in ("in-press", "preprint", "in-press", "preprint")]
    + [("language", {"language": l}) for l in ("zh", "es", "de")]
    + [("full_text", {"full_text_accessible": "false"})] * 7
    + [("sdg_relevance", {"sdg_relevant": r})
       for r in ("no", "no", "no", "unreviewed", "unreviewed")]
)
assert len(EXCLUSIONS) == 34

TOPICS = [
    "rural electrification planning", "mini-grid deployment", "energy poverty indicators",
    "renewable capacity expansion", "household energy transitions", "clean cooking adoption",
    "grid reliability assessment", "energy efficiency retrofits", "off-grid tariff design",
    "power sector decarbonisation", "urban energy demand", "community energy programmes",
]


def make_records():
    rng = random.Random(7)
    slots = [None] * 87
    positions = rng.sample(range(87), len(EXCLUSIONS))
    for pos, exc in zip(positions, EXCLUSIONS):
        slots[pos] = exc

    rows = []
    retained_ids = []
    for i, slot in enumerate(slots):
        rid = f"sdg7-{i + 1:04d}"
        fields = dict(PASSING)
        if i % 3 == 2:
            fields["doc_type"] = "conference-paper"
            fields["source_type"] = "conference-proceeding"
        fields["year"] = str(2016 + (i % 6))
        if slot is not None:
            fields.update(slot[1])
        else:
            retained_ids.append(rid)
        topic = TOPICS[i % len(TOPICS)]
        rows.append({
            "id": rid,
            "title": f"A study of {topic} ({rid})",
            "abstract": f"This paper investigates {topic} in the context of affordable and clean energy.",
            "keywords": "energy;SDG 7;sustainability",
            "link": f"https://example.org/records/{rid}",
            **fields,
        })
    return rows, retained_ids


# --- labeled corpus fixture ---------------------------------------------------

# (leaf path, document-frequency count, mention sentence)
PLAN = [
    ("sources/organisational/international/other/world-bank", 9,
     "This study draws on data published by the World Bank."),
    ("sources/organisational/international/un/un-statistics", 8,
     "We relied on data from the UN statistics division."),
    ("sources/organisational/international/eu/eurostat", 7,
     "Regional energy data were retrieved from Eurostat."),
    ("sources/organisational/international/other/iea", 5,
     "Historical demand data were obtained from the IEA."),
    ("sources/organisational/international/un/fao", 4,
     "Agricultural production data came from the FAO."),
    ("sources/organisational/international/un/who", 3,
     "Health indicator data were sourced from the WHO."),
    ("sources/organisational/international/un/unesco", 2,
     "Education data were collected from UNESCO."),
    ("sources/organisational/international/un/sdsn", 2,
     "Indicator data were assembled by the SDSN."),
    ("sources/organisational/international/eu/edgar", 2,
     "Emission data were taken from EDGAR."),
    ("sources/organisational/international/eu/copernicus", 1,
     "Atmospheric data were downloaded from Copernicus."),
    ("sources/organisational/international/eu/esdac", 1,
     "Soil data were extracted from ESDAC."),
    ("sources/organisational/national", 2,
     "The data were drawn from national statistics offices."),
    ("sources/traditional-statistics/survey", 3,
     "The survey gathered household data across three provinces."),
    ("sources/traditional-statistics/census", 2,
     "Population data were aligned with the census returns."),
    ("sources/traditional-statistics/interview", 2,
     "We complemented the data with one interview per site."),
    ("sources/traditional-statistics/focus-group", 1,
     "A focus group helped interpret the data."),
    ("sources/traditional-statistics/questionnaire", 1,
     "A questionnaire supplied the remaining data."),
    ("types/resource/electricity", 8,
     "We analysed electricity access data at village level."),
    ("types/resource/land-use", 8,
     "Regional land use data were digitised."),
    ("types/resource/solar", 7,
     "The data cover solar generation capacity."),
    ("types/resource/water-use", 7,
     "The data quantify water use in generation plants."),
    ("types/resource/biomass", 2,
     "We compiled data on biomass availability."),
    ("types/resource/heat", 2,
     "District heat consumption data were modelled."),
    ("types/resource/mineral", 1,
     "The data describe mineral requirements for turbines."),
    ("types/geographic/satellite-imagery", 3,
     "We processed satellite imagery data for rural areas."),
    ("types/geographic/gis", 2,
     "We layered GIS data over the distribution network."),
    ("types/geographic/gps", 2,
     "Vehicle GPS data traced fuel deliveries."),
    ("types/geographic/openstreetmap", 1,
     "Building footprints came from OpenStreetMap data."),
    ("types/weather", 1,
     "Local weather data were recorded hourly."),
    ("types/sensor", 1,
     "A sensor network streamed consumption data."),
]

INTRO = "This article examines affordable and clean energy progress in emerging economies."
FILLER = "Prior work highlights measurement gaps in this sector."
OUTRO = "The findings inform policy design for rural electrification programmes."


def make_corpus(retained_ids):
    assert len(retained_ids) == 53
    sources_total = sum(c for p, c, _ in PLAN if p.startswith("sources/"))
    types_total = sum(c for p, c, _ in PLAN if p.startswith("types/"))
    assert (sources_total, types_total) == (55, 45)

    flat = []
    for path, count, sentence in PLAN:
        flat.extend([(path, sentence)] * count)

    per_doc = [[] for _ in retained_ids]
    for i, item in enumerate(flat):
        per_doc[i % len(retained_ids)].append(item)
    for assigned in per_doc:
        paths = [p for p, _ in assigned]
        assert len(paths) == len(set(paths)), "duplicate leaf in one document"

    texts = {}
    for rid, assigned in zip(retained_ids, per_doc):
        parts = [INTRO]
        for k, (_, sentence) in enumerate(assigned):
            parts.append(sentence)
            if k == 0:
                parts.append(FILLER)
        parts.append(OUTRO)
        texts[rid] = "\n".join(parts) + "\n"

    counts = {path: count for path, count, _ in PLAN}
    return texts, counts


# --- text cleaning golden files -----------------------------------------------

CLEANING = [
    ("electri-\ncity data", "electricity data"),
    ("a  b\r\nc", "a b c"),
    ("page one\fpage two", "page one page two"),
    ("café data", "café data"),
    ("data-\nDriven methods", "data- Driven methods"),
    ("x\t\ty   z", "x y z"),
    ("a b", "a b"),
    (
        "Energy demand rose.\nWe measured elec-\ntricity use.\r\n\r\nResults follow.",
        "Energy demand rose. We measured electricity use. Results follow.",
    ),
    (" \r\n\f  ", ""),
    ("Smart me-\nters  log\fdata.\r\nSee Fig. 3.", "Smart meters log data. See Fig. 3."),
]


def main():
    rows, retained_ids = make_records()
    header = ["id", "title", "abstract", "keywords", "year", "doc_type", "source_type",
              "pub_stage", "language", "full_text_accessible", "sdg_relevant", "link"]
    with open(HERE / "records_87.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=header, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)

    texts, counts = make_corpus(retained_ids)
    store = HERE / "sdg7_store"
    store.mkdir(exist_ok=True)
    for old in store.glob("*.txt"):
        old.unlink()
    for rid, text in texts.items():
        (store / f"{rid}.txt").write_text(text, encoding="utf-8")

    with open(HERE / "expected_leaf_counts.json", "w", encoding="utf-8") as f:
        json.dump({"retained": len(retained_ids), "leaf_counts": counts}, f, indent=2)
        f.write("\n")

    cleaning = HERE / "cleaning"
    cleaning.mkdir(exist_ok=True)
    for i, (raw, expected) in enumerate(CLEANING):
        (cleaning / f"raw_{i:02d}.txt").write_bytes(raw.encode("utf-8"))
        (cleaning / f"expected_{i:02d}.txt").write_bytes(expected.encode("utf-8"))

    print(f"records: {len(rows)}, retained: {len(retained_ids)}, "
          f"label pairs: {sum(c for _, c, _ in PLAN)}")


if __name__ == "__main__":
    main()
