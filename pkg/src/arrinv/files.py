"""Arrangement files, report assembly, deterministic JSON serialisation.

Arrangement files are JSON: ``{"format_version": 1, "label": ...,
"lines": [["1", "0", "0"], ...]}`` with each coefficient an integer or a
"p/q" string.  Reports serialise with sorted keys and string rationals so
identical inputs produce byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from . import milnor, strata
from .errors import ArrangementError
from .graded import LinearForm
from .lattice import Arrangement, canonical_form, intersection_lattice, tau_of_lattice

FORMAT_VERSION = 1


class FileFormatError(ValueError):
    """Malformed arrangement file (reported as a parse error, exit code 2)."""


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise FileFormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FileFormatError(f"bad rational {value!r}: {exc}") from None
    raise FileFormatError(f"not a rational: {value!r}")


def rational_str(value) -> str:
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def arrangement_from_dict(data: dict) -> tuple[Arrangement, str | None]:
    if not isinstance(data, dict):
        raise FileFormatError("top level must be a JSON object")
    if data.get("format_version") != FORMAT_VERSION:
        raise FileFormatError(f"format_version must be {FORMAT_VERSION}")
    lines = data.get("lines")
    if not isinstance(lines, list) or not lines:
        raise FileFormatError("'lines' must be a non-empty list")
    forms = []
    for i, triple in enumerate(lines):
        if not isinstance(triple, list) or len(triple) != 3:
            raise FileFormatError(f"line {i + 1}: expected a coefficient triple")
        a, b, c = (parse_rational(v) for v in triple)
        if a == b == c == 0:
            raise ArrangementError(f"line {i + 1} is identically zero")
        forms.append(LinearForm(a, b, c))
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise FileFormatError("'label' must be a string")
    return Arrangement(forms), label


def load_arrangement(path: str) -> tuple[Arrangement, str | None]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path} is not valid JSON: {exc}") from None
    return arrangement_from_dict(data)


def arrangement_to_dict(arr: Arrangement, label: str | None = None) -> dict:
    out = {
        "format_version": FORMAT_VERSION,
        "lines": [[rational_str(v) for v in f.triple] for f in arr.forms],
    }
    if label is not None:
        out["label"] = label
    return out


def dump_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def lattice_summary(arr: Arrangement) -> dict:
    lat = intersection_lattice(arr)
    key = canonical_form(lat)
    digest = hashlib.sha256(repr(key).encode()).hexdigest()[:16]
    return {
        "d": lat.d,
        "n_census": {str(m): n for m, n in sorted(lat.n_census().items())},
        "tau_from_lattice": tau_of_lattice(lat),
        "canonical_key_digest": digest,
    }


def build_report(
    arr: Arrangement,
    label: str | None,
    config: milnor.EngineConfig,
    cap: int | None = None,
    variant: str = "E",
) -> dict:
    from . import __version__

    rep = milnor.classify(arr.polynomial(), cap=cap, config=config, assume_arrangement=True)
    stratum = strata.stratum_report(arr, config)
    return {
        "input": arrangement_to_dict(arr, label),
        "invariants": rep.to_dict(),
        "lattice": lattice_summary(arr),
        "stratum": {
            "local_dim": strata.local_stratum_dim(arr, variant),
            "codim_bound": stratum.codim_bound,
            "codim_bound_strict_regime": stratum.codim_bound_strict_regime,
            "orbit_dim": stratum.orbit_dim,
            "equation_variant": variant,
        },
        "provenance": {
            "tool": "arrinv",
            "version": __version__,
            "certified_ranks": config.certified,
            "format_version": FORMAT_VERSION,
        },
    }


_COMPARE_FIELDS = (
    "tau",
    "mdr",
    "mdr_e",
    "ct",
    "st",
    "reg",
    "classification",
    "exponents",
    "milnor_dims",
    "saturation_gap_dims",
    "sat_degree",
    "algebraically_rigid",
)


def build_comparison(report_a: dict, report_b: dict) -> dict:
    lat_a = report_a["lattice"]
    lat_b = report_b["lattice"]
    isomorphic = lat_a["canonical_key_digest"] == lat_b["canonical_key_digest"]
    differing = [
        name
        for name in _COMPARE_FIELDS
        if report_a["invariants"].get(name) != report_b["invariants"].get(name)
    ]
    return {
        "isomorphic_lattices": isomorphic,
        "differing_invariants": differing,
        "lattice_invariants_differ_despite_isomorphism": bool(isomorphic and differing),
        "left": report_a,
        "right": report_b,
    }
