"""JSON and CSV forms of families, automata, count tables and reports.

Counts are written as decimal strings and rationals as ``"num/den"`` strings,
so nothing passes through a fixed-width integer or a float.
"""

from __future__ import annotations

import csv
import io
import json

from .automaton import FactorDFA
from .core import (
    Alphabet,
    CountTable,
    Explicit,
    FactorFamily,
    LengthSpectrum,
    PowerFree,
    Recognizer,
    format_fraction,
    format_word,
    parse_word,
    to_fraction,
)


def family_to_json(family: FactorFamily) -> dict:
    if isinstance(family, Explicit):
        return {"type": "explicit", "factors": [format_word(f) for f in family.sorted_factors()]}
    if isinstance(family, PowerFree):
        return {"type": "power_free", "p": format_fraction(family.p)}
    if isinstance(family, Recognizer):
        return {"type": "recognizer", "dfa": family.dfa.to_json()}
    if isinstance(family, LengthSpectrum):
        if family.is_finite:
            return {"type": "lengths", "lengths": list(family.lengths)}
        return {"type": "one_per_length", "min_length": family.min_length}
    raise TypeError(type(family).__name__)


def family_from_json(obj: dict, alphabet: Alphabet | None = None) -> FactorFamily:
    kind = obj.get("type")
    if kind == "explicit":
        return Explicit(parse_word(f, alphabet) for f in obj.get("factors", []))
    if kind == "power_free":
        return PowerFree(to_fraction(str(obj["p"])))
    if kind == "recognizer":
        return Recognizer(FactorDFA.from_json(obj["dfa"]))
    if kind == "one_per_length":
        return LengthSpectrum.one_per_length(int(obj["min_length"]))
    if kind == "lengths":
        return LengthSpectrum.finite(int(x) for x in obj["lengths"])
    raise ValueError(f"unknown family type {kind!r}")


def load_descriptor(obj: dict) -> tuple[FactorFamily, Alphabet | None]:
    """Parse ``{"alphabet": k, "family": {...}}`` or a bare family object."""
    if "family" in obj:
        alphabet = Alphabet(int(obj["alphabet"])) if "alphabet" in obj else None
        return family_from_json(obj["family"], alphabet), alphabet
    return family_from_json(obj), None


def descriptor_to_json(family: FactorFamily, alphabet: Alphabet) -> dict:
    return {"alphabet": alphabet.size, "family": family_to_json(family)}


def table_to_json(table: CountTable) -> dict:
    return {
        "family": family_to_json(table.family),
        "alphabet": table.alphabet.size,
        "circular": table.circular,
        "counts": {str(n): str(c) for n, c in enumerate(table.counts)},
    }


def table_from_json(obj: dict) -> CountTable:
    alphabet = Alphabet(int(obj["alphabet"]))
    family = family_from_json(obj["family"], alphabet)
    items = sorted((int(n), int(c)) for n, c in obj["counts"].items())
    if [n for n, _ in items] != list(range(len(items))):
        raise ValueError("counts must cover 0..N without gaps")
    return CountTable([c for _, c in items], family, alphabet, circular=bool(obj.get("circular", False)))


def table_to_csv(table: CountTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "count"])
    for n, c in enumerate(table.counts):
        writer.writerow([n, str(c)])
    return buf.getvalue()


def table_from_csv(text: str, family: FactorFamily, alphabet: Alphabet, circular: bool = False) -> CountTable:
    rows = list(csv.DictReader(io.StringIO(text)))
    counts = [int(r["count"]) for r in sorted(rows, key=lambda r: int(r["n"]))]
    return CountTable(counts, family, alphabet, circular=circular)


def ratio_rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "c_check", "c_circ"])
    for r in rows:
        writer.writerow([r.t, format_fraction(r.c_check), format_fraction(r.c_circ)])
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
