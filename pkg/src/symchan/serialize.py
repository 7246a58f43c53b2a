"""JSON (de)serialization for matrices, channels, generators, representations
and trajectories.

Matrices are nested arrays of [re, im] pairs, row-major:
[[[1,0],[0,0]],[[0,0],[1,0]]] is the 2x2 identity.
"""

import json

import numpy as np

from .channelcore import KrausChannel, LindbladGenerator
from .errors import ConfigError
from .liealg import InvariantBlock, Representation
from .matkernel import as_matrix


def matrix_to_json(m):
    m = as_matrix(m)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(doc):
    try:
        rows = [[complex(float(re), float(im)) for re, im in row] for row in doc]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed matrix document: {exc}") from exc
    if not rows or any(len(row) != len(rows[0]) for row in rows):
        raise ConfigError("matrix rows must be nonempty and of equal length")
    return np.array(rows, dtype=np.complex128)


def channel_to_json(ch):
    return {"dim": ch.dim, "kraus": [matrix_to_json(k) for k in ch.kraus_ops]}


def channel_from_json(doc):
    _require_keys(doc, {"dim", "kraus"}, "channel")
    ops = tuple(matrix_from_json(k) for k in doc["kraus"])
    return KrausChannel(dim=int(doc["dim"]), kraus_ops=ops)


def generator_to_json(g):
    return {
        "dim": g.dim,
        "hamiltonian": matrix_to_json(g.hamiltonian),
        "jumps": [
            {"rate": float(rate), "op": matrix_to_json(op)} for rate, op in g.jumps
        ],
    }


def generator_from_json(doc):
    _require_keys(doc, {"dim", "hamiltonian", "jumps"}, "generator")
    jumps = tuple(
        (float(j["rate"]), matrix_from_json(j["op"])) for j in doc["jumps"]
    )
    return LindbladGenerator(
        dim=int(doc["dim"]),
        hamiltonian=matrix_from_json(doc["hamiltonian"]),
        jumps=jumps,
    )


def representation_to_json(rep):
    return {
        "dim": rep.dim,
        "cartan": {name: matrix_to_json(m) for name, m in rep.cartan.items()},
        "raising": {name: matrix_to_json(m) for name, m in rep.raising.items()},
        "lowering": {name: matrix_to_json(m) for name, m in rep.lowering.items()},
        "blocks": [
            {
                "label": float(b.label),
                "dim": int(b.dim),
                "projector": matrix_to_json(b.projector),
            }
            for b in rep.blocks
        ],
    }


def representation_from_json(doc):
    _require_keys(doc, {"dim", "cartan", "raising", "lowering", "blocks"}, "representation")
    blocks = tuple(
        InvariantBlock(
            label=float(b["label"]),
            dim=int(b["dim"]),
            projector=matrix_from_json(b["projector"]),
        )
        for b in doc["blocks"]
    )
    return Representation(
        dim=int(doc["dim"]),
        cartan={k: matrix_from_json(v) for k, v in doc["cartan"].items()},
        raising={k: matrix_from_json(v) for k, v in doc["raising"].items()},
        lowering={k: matrix_from_json(v) for k, v in doc["lowering"].items()},
        blocks=blocks,
    )


def trajectory_states_to_json(traj):
    return [
        {"t": float(t), "rho": matrix_to_json(rho)}
        for t, rho in zip(traj.times, traj.states)
    ]


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def dump_json(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _require_keys(doc, keys, what):
    if not isinstance(doc, dict):
        raise ConfigError(f"{what} document must be a JSON object")
    missing = keys - doc.keys()
    if missing:
        raise ConfigError(f"{what} document is missing keys: {sorted(missing)}")
