"""JSON input formats and delimited trajectory tables.

Three JSON input kinds are understood:

* rule tables for the automaton module, either an explicit bijection
  ``{"kind": "permutation", "state_count": n, "map": [[src, dst], ...],
  "dt": 1.0}`` (``"map"`` may also be a flat list indexed by source
  state) or a local update table ``{"kind": "cellular", "cells": c,
  "alphabet": a, "radius": r, "table": {"0,1,0": 1, ...}, "dt": 1.0}``
  whose keys are comma-separated neighborhood symbols (plain digit
  strings are accepted for single-digit alphabets);

* string ensembles ``{"transverse_dims": d, "lattice_step": 1,
  "strings": [{"bottom": [...], "top": [...], "tau0": 0,
  "orientation": 1}, ...]}`` with integer coordinate rows;

* sign fields ``{"dims": d, "t0": 0, "bottom": [...], "top": [...]}``
  with +-1 entries.

Trajectory dumps are tab-separated integer tables with a header row.
"""

import json

import numpy as np

from .automaton import AutomatonSpec, cellular_spec
from .boolean_fermion import BooleanField
from .string_lattice import StringConfiguration, WorldSheetLattice


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc


def _dump_json(obj, path):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _parse_neighborhood(key, width):
    parts = key.split(",") if "," in key else list(key)
    if len(parts) != width:
        raise ValueError(
            f"neighborhood key {key!r} has {len(parts)} symbols, expected {width}"
        )
    return tuple(int(p) for p in parts)


def load_rule_table(path):
    """AutomatonSpec from a JSON rule table (permutation or cellular)."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: rule table must be a JSON object")
    kind = data.get("kind")
    dt = float(data.get("dt", 1.0))
    if kind == "permutation":
        if "state_count" not in data or "map" not in data:
            raise ValueError(f"{path}: permutation tables need state_count and map")
        n = int(data["state_count"])
        raw = data["map"]
        rule = [None] * n
        if all(isinstance(e, list) and len(e) == 2 for e in raw):
            for src, dst in raw:
                src = int(src)
                if not 0 <= src < n:
                    raise ValueError(f"{path}: source state {src} out of range")
                if rule[src] is not None:
                    raise ValueError(f"{path}: source state {src} mapped twice")
                rule[src] = int(dst)
        elif len(raw) == n:
            rule = [int(d) for d in raw]
        else:
            raise ValueError(f"{path}: map must be [src, dst] pairs or a length-{n} list")
        if any(d is None for d in rule):
            missing = rule.index(None)
            raise ValueError(f"{path}: source state {missing} has no image")
        return AutomatonSpec(n, tuple(rule), dt=dt)
    if kind == "cellular":
        for key in ("cells", "alphabet", "radius", "table"):
            if key not in data:
                raise ValueError(f"{path}: cellular tables need {key}")
        width = 2 * int(data["radius"]) + 1
        table = {
            _parse_neighborhood(k, width): int(v) for k, v in data["table"].items()
        }
        return cellular_spec(
            int(data["cells"]), int(data["alphabet"]), int(data["radius"]), table, dt=dt
        )
    raise ValueError(f"{path}: unknown rule table kind {kind!r}")


def save_rule_table(spec, path):
    """Rule table JSON in the explicit permutation form."""
    body = {
        "kind": "permutation",
        "state_count": spec.state_count,
        "map": [[src, dst] for src, dst in enumerate(spec.step_rule)],
        "dt": spec.dt,
    }
    _dump_json(body, path)


def load_string_ensemble(path):
    """List of StringConfiguration from an ensemble JSON file."""
    data = _load_json(path)
    if not isinstance(data, dict) or "strings" not in data:
        raise ValueError(f"{path}: string ensemble must be an object with 'strings'")
    dims = int(data.get("transverse_dims", 1))
    step = int(data.get("lattice_step", 1))
    configs = []
    for i, entry in enumerate(data["strings"]):
        if "bottom" not in entry or "top" not in entry:
            raise ValueError(f"{path}: string {i} needs bottom and top slices")
        bottom = np.array(entry["bottom"])
        lattice = WorldSheetLattice(bottom.shape[0], dims, step)
        configs.append(
            StringConfiguration(
                lattice,
                bottom,
                np.array(entry["top"]),
                int(entry.get("tau0", 0)),
                int(entry.get("orientation", 1)),
            )
        )
    if not configs:
        raise ValueError(f"{path}: ensemble contains no strings")
    return configs


def save_string_ensemble(configs, path):
    dims = {c.lattice.transverse_dims for c in configs}
    steps = {c.lattice.step for c in configs}
    if len(dims) != 1 or len(steps) != 1:
        raise ValueError("ensemble members disagree on dimensions or lattice step")
    body = {
        "transverse_dims": dims.pop(),
        "lattice_step": steps.pop(),
        "strings": [
            {
                "bottom": c.bottom.tolist(),
                "top": c.top.tolist(),
                "tau0": c.tau0,
                "orientation": c.orientation,
            }
            for c in configs
        ],
    }
    _dump_json(body, path)


def load_boolean_field(path):
    """BooleanField from a sign-field JSON file."""
    data = _load_json(path)
    if not isinstance(data, dict) or "bottom" not in data or "top" not in data:
        raise ValueError(f"{path}: sign field must be an object with bottom and top")
    return BooleanField(
        np.array(data["bottom"]),
        np.array(data["top"]),
        dims=int(data.get("dims", 1)),
        t0=int(data.get("t0", 0)),
    )


def save_boolean_field(field, path):
    body = {
        "dims": field.dims,
        "t0": field.t0,
        "bottom": field.bottom.tolist(),
        "top": field.top.tolist(),
    }
    _dump_json(body, path)


def write_string_trajectory(snapshots, path):
    """Tab-separated table of top slices: tau, string, sigma, coordinates.

    `snapshots` is an iterable of string ensembles (lists of
    StringConfiguration), typically one per time step.
    """
    lines = []
    dims = None
    for ensemble in snapshots:
        for s, config in enumerate(ensemble):
            if dims is None:
                dims = config.lattice.transverse_dims
                header = ["tau", "string", "sigma"] + [f"x{mu}" for mu in range(dims)]
                lines.append("\t".join(header))
            for sigma in range(config.lattice.length):
                row = [config.tau0, s, sigma] + [int(x) for x in config.top[sigma]]
                lines.append("\t".join(str(v) for v in row))
    if dims is None:
        raise ValueError("no snapshots to write")
    _write_text("\n".join(lines) + "\n", path)


def write_boolean_trajectory(snapshots, path):
    """Tab-separated table of top slices: t, x, sign components."""
    lines = []
    dims = None
    for field in snapshots:
        if dims is None:
            dims = field.dims
            header = ["t", "x"] + [f"s{mu}" for mu in range(dims)]
            lines.append("\t".join(header))
        for x in range(field.sites):
            row = [field.t0, x] + [int(v) for v in field.top[x]]
            lines.append("\t".join(str(v) for v in row))
    if dims is None:
        raise ValueError("no snapshots to write")
    _write_text("\n".join(lines) + "\n", path)


def _write_text(text, path):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
