"""JSON files for matrices, vectors, states and eigendecompositions.

Matrix: ``{"size": N, "data": [[[re, im], ... N ...], ... N rows ...]}``
Vector: ``{"size": N, "data": [[re, im], ...]}``

A state file holds either shape: a vector is a pure state, a matrix a
density matrix.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import MalformedInputFile
from .intop import QuantumState
from .matcore import EigenDecomposition


def _pair(x, where: str, src: str) -> complex:
    if (
        not isinstance(x, (list, tuple))
        or len(x) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)
    ):
        raise MalformedInputFile(f"{src}: {where}: expected [re, im] pair of numbers, got {x!r}")
    return complex(float(x[0]), float(x[1]))


def _size(obj, src: str) -> int:
    if not isinstance(obj, dict):
        raise MalformedInputFile(f"{src}: top level must be an object with 'size' and 'data'")
    for key in ("size", "data"):
        if key not in obj:
            raise MalformedInputFile(f"{src}: missing field {key!r}")
    n = obj["size"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedInputFile(f"{src}: field 'size' must be a positive integer, got {n!r}")
    if not isinstance(obj["data"], list) or len(obj["data"]) != n:
        raise MalformedInputFile(f"{src}: field 'data' must be a list of {n} entries")
    return n


def matrix_from_obj(obj, src: str = "<matrix>") -> np.ndarray:
    n = _size(obj, src)
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(obj["data"]):
        if not isinstance(row, list) or len(row) != n:
            raise MalformedInputFile(f"{src}: data[{i}]: expected a row of {n} [re, im] pairs")
        for j, x in enumerate(row):
            out[i, j] = _pair(x, f"data[{i}][{j}]", src)
    return out


def vector_from_obj(obj, src: str = "<vector>") -> np.ndarray:
    n = _size(obj, src)
    return np.array([_pair(x, f"data[{i}]", src) for i, x in enumerate(obj["data"])], dtype=np.complex128)


def _is_matrix_obj(obj) -> bool:
    data = obj.get("data") if isinstance(obj, dict) else None
    return bool(data) and isinstance(data[0], list) and bool(data[0]) and isinstance(data[0][0], list)


def _pairs(values) -> list:
    return [[float(z.real), float(z.imag)] for z in values]


def matrix_to_obj(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    return {"size": int(m.shape[0]), "data": [_pairs(row) for row in m]}


def vector_to_obj(v) -> dict:
    v = np.asarray(v, dtype=np.complex128)
    return {"size": int(v.shape[0]), "data": _pairs(v)}


def state_to_obj(state: QuantumState) -> dict:
    return vector_to_obj(state.data) if state.kind == "pure" else matrix_to_obj(state.data)


def eig_to_obj(eig: EigenDecomposition) -> dict:
    return {
        "hbar": eig.hbar,
        "eigenvalues": [float(x) for x in eig.eigenvalues],
        "vectors": matrix_to_obj(eig.vectors),
    }


def eig_from_obj(obj, src: str = "<eig>") -> EigenDecomposition:
    if not isinstance(obj, dict) or "eigenvalues" not in obj or "vectors" not in obj:
        raise MalformedInputFile(f"{src}: expected an object with 'eigenvalues' and 'vectors'")
    vec = matrix_from_obj(obj["vectors"], f"{src}: vectors")
    lam = obj["eigenvalues"]
    if not isinstance(lam, list) or len(lam) != vec.shape[0]:
        raise MalformedInputFile(f"{src}: 'eigenvalues' must be a list of {vec.shape[0]} numbers")
    hbar = obj.get("hbar", 1.0)
    return EigenDecomposition(np.array(lam, dtype=np.float64), vec, float(hbar))


def load_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MalformedInputFile(f"{path}: cannot read: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputFile(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj) + "\n")


def read_matrix(path) -> np.ndarray:
    obj = load_json(path)
    _size(obj, str(path))
    if not _is_matrix_obj(obj):
        raise MalformedInputFile(f"{path}: expected a matrix (rows of [re, im] pairs)")
    return matrix_from_obj(obj, str(path))


def read_vector(path) -> np.ndarray:
    return vector_from_obj(load_json(path), str(path))


def read_state(path) -> QuantumState:
    """A vector file gives a pure state, a matrix file a density matrix."""
    obj = load_json(path)
    if _is_matrix_obj(obj):
        return QuantumState.density(matrix_from_obj(obj, str(path)))
    return QuantumState.pure(vector_from_obj(obj, str(path)))


def write_matrix(m, path) -> None:
    dump_json(matrix_to_obj(m), path)


def write_vector(v, path) -> None:
    dump_json(vector_to_obj(v), path)


def read_eig(path) -> EigenDecomposition:
    return eig_from_obj(load_json(path), str(path))


def write_eig(eig: EigenDecomposition, path) -> None:
    dump_json(eig_to_obj(eig), path)


def parse_float(text: str) -> float:
    """Parse a float, accepting ``inf``/``infinity``."""
    x = float(text)
    if math.isnan(x):
        raise ValueError("nan is not allowed")
    return x
