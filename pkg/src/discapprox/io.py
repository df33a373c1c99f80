"""File formats: JSON measures and distribution functions, CSV point sets.

Measure files are either explicit::

    {"dim": 2, "atoms": [{"point": [0.1, 0.2], "weight": 0.75}, ...]}

or generated from a decay family::

    {"family": "geometric" | "doubleexp" | "polynomial", "r": 0.5,
     "dim": 1, "atom_rule": "halton" | "dyadic" | "explicit",
     "points": [[...], ...]}          # only for atom_rule "explicit"

with optional ``"alpha1"``, checked against the family's normalized first
weight. Distribution-function files hold ``{"knots", "values_left",
"jumps"}`` with ``values_left[j] = mu([0, knots[j]))`` taken before the
jump at that knot. Point sets are CSV, one point per row, written with the
shortest decimal that round-trips.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .gauge import GaugeFamily, double_exponential, geometric, polynomial
from .measure import DiscreteMeasure, MeasureError, PointSet
from .tail import family_measure
from .transport import Cdf1D

FAMILIES = ("geometric", "doubleexp", "polynomial")


def make_family(name: str, r: float | None = None) -> GaugeFamily:
    if name == "geometric":
        return geometric(0.5 if r is None else r)
    if name == "doubleexp":
        return double_exponential(0.4 if r is None else r)
    if name == "polynomial":
        return polynomial()
    raise ValueError(f"unknown family {name!r}; expected one of {FAMILIES}")


def measure_from_dict(data: dict):
    """Build a measure from its JSON form; returns ``(measure, family or None)``."""
    if "atoms" in data:
        atoms = data["atoms"]
        pts = [a["point"] for a in atoms]
        w = [a["weight"] for a in atoms]
        dim = int(data.get("dim", len(pts[0]) if pts else 1))
        pts = np.asarray(pts, dtype=float).reshape(len(w), dim)
        return DiscreteMeasure(pts, w), None
    if "family" in data:
        fam = make_family(data["family"], data.get("r"))
        m = family_measure(fam, int(data.get("dim", 1)),
                           data.get("atom_rule", "halton"), data.get("points"))
        if "alpha1" in data and not math.isclose(data["alpha1"], m.alpha1,
                                                  rel_tol=0, abs_tol=1e-12):
            raise MeasureError(
                f"alpha1={data['alpha1']} does not match the normalized family "
                f"weight {m.alpha1!r}")
        return m, fam
    raise MeasureError("measure file needs either 'atoms' or 'family'")


def measure_to_dict(m: DiscreteMeasure) -> dict:
    if not m.is_finite:
        raise ValueError("only finite measures have an explicit file form")
    return {"dim": m.dim,
            "atoms": [{"point": [float(c) for c in p], "weight": float(w)}
                      for p, w in zip(m.points, m.weights)]}


def read_measure(path):
    with open(path) as fh:
        return measure_from_dict(json.load(fh))


def write_measure(m: DiscreteMeasure, path):
    with open(path, "w") as fh:
        json.dump(measure_to_dict(m), fh, indent=1)


def read_cdf(path) -> Cdf1D:
    with open(path) as fh:
        data = json.load(fh)
    return Cdf1D(data["knots"], data["values_left"], data["jumps"])


def write_cdf(f: Cdf1D, path):
    with open(path, "w") as fh:
        json.dump({"knots": f.knots.tolist(), "values_left": f.values_left.tolist(),
                   "jumps": f.jumps.tolist()}, fh)


def format_points(ps: PointSet) -> str:
    # repr of a Python float is the shortest round-trip decimal
    return "".join(",".join(repr(float(c)) for c in row) + "\n" for row in ps.points)


def write_points(ps: PointSet, path):
    Path(path).write_text(format_points(ps))


def read_points(path) -> PointSet:
    with open(path, newline="") as fh:
        rows = [[float(c) for c in row] for row in csv.reader(fh) if row]
    return PointSet(np.array(rows, dtype=float))


def read_any(path):
    """A CSV point set or a JSON measure, chosen by file extension."""
    if str(path).lower().endswith(".csv"):
        return read_points(path), None
    return read_measure(path)
