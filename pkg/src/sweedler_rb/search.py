"""Vectorized finite-field search cores for Rota-Baxter operators on H4.

Matrices live in numpy arrays ``mat[n, k, j]`` = coordinate k of R(e_j),
entries in {0, ..., p-1}.  A matrix is identified with its packed base-p
integer read row-major, entry (k, j) contributing at digit 15 - (4k + j)
(most significant first), so lexicographic row-major order on matrices is
numeric order on packed indices.

Two strategies produce the same set:
  * exhaustive -- all p^16 candidates in packed order, feasible for p = 3;
  * backtracking -- columns R(1), R(g), R(x), R(gx) filled in order, pruning
    after each column with every basis-pair identity whose right-hand side
    only touches already-fixed columns.
"""

from __future__ import annotations

import numpy as np

from .errors import Infeasible, WeightMismatch
from .field import check_modulus
from .rb import PAIR_ORDER, _SPARSE

DIM = 4
NPAIRS = DIM * DIM

_POWERS_CACHE = {}


def _powers(p):
    if p not in _POWERS_CACHE:
        _POWERS_CACHE[p] = (p ** (15 - np.arange(16, dtype=np.int64))).reshape(4, 4)
    return _POWERS_CACHE[p]


def pack(mats, p):
    """Packed base-p indices of matrices [..., 4, 4] (row-major digits)."""
    w = _powers(p)
    return np.tensordot(mats.astype(np.int64), w, axes=([-2, -1], [0, 1]))


def unpack(idx, p):
    """Inverse of pack: [...,] int64 -> [..., 4, 4] int16 matrices."""
    idx = np.asarray(idx, dtype=np.int64)
    w = _powers(p).reshape(16)
    digits = (idx[..., None] // w) % p
    return digits.reshape(idx.shape + (4, 4)).astype(np.int16)


def _basis_products(p):
    """prodvec[i, j] = coordinates of e_i * e_j mod p."""
    out = np.zeros((4, 4, 4), dtype=np.int16)
    for i, j, k, s in _SPARSE:
        out[i, j, k] = s % p
    return out


def mult_vec(u, v, p):
    """Batched H4 product of coordinate vectors [..., 4]."""
    out = np.zeros(np.broadcast_shapes(u.shape, v.shape), dtype=np.int32)
    for i, j, k, s in _SPARSE:
        out[..., k] += s * (u[..., i].astype(np.int32) * v[..., j])
    return out % p


def pair_defect(mats, i, j, lam, p):
    """Defect of the weight-lam identity at basis pair (i, j); mats [n, 4, 4]."""
    u = mats[:, :, i]
    v = mats[:, :, j]
    lhs = mult_vec(u, v, p)
    prodvec = _basis_products(p)
    eye = np.eye(4, dtype=np.int16)
    t = (
        mult_vec(u, eye[j], p)
        + mult_vec(eye[i][None, :], v, p)
        + lam * prodvec[i, j][None, :]
    ) % p
    rhs = np.einsum("nkm,nm->nk", mats.astype(np.int32), t)
    return (lhs - rhs) % p


def rb_mask(mats, lam, p, pairs=PAIR_ORDER):
    """Boolean mask of matrices satisfying the identity at all given pairs."""
    keep = np.ones(len(mats), dtype=bool)
    for i, j in pairs:
        if not keep.any():
            break
        idx = np.flatnonzero(keep)
        d = pair_defect(mats[idx], i, j, lam, p)
        keep[idx[(d != 0).any(axis=1)]] = False
    return keep


def _check_weight(lam, p):
    check_modulus(p)
    lam = int(lam) % p
    if lam == 0:
        raise WeightMismatch("weight must be nonzero")
    return lam


def exhaustive_scan(p, lam, chunk=3**12, limit=None):
    """All RB matrices of weight lam over F_p by full scan; packed indices, ascending.

    Guarded to p = 3: p >= 5 means ~10^11 candidates.
    """
    lam = _check_weight(lam, p)
    if p >= 5:
        raise Infeasible(f"exhaustive scan over F_{p} needs {p}**16 candidates")
    total = p ** 16 if limit is None else limit
    found = []
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        mats = unpack(idx, p)
        keep = rb_mask(mats, lam, p)
        found.append(idx[keep])
        start = stop
    return np.concatenate(found) if found else np.empty(0, dtype=np.int64)


def _column_values(p):
    """All p^4 column vectors [v, 4], coordinate 0 most significant."""
    n = p ** 4
    idx = np.arange(n, dtype=np.int64)
    w = p ** (3 - np.arange(4, dtype=np.int64))
    return ((idx[:, None] // w) % p).astype(np.int16)


def _partial_prune(part, level, lam, p):
    """Filter partial matrices [n, 4, level+1] with every pair identity that is
    closed (its R-argument supported on fixed columns).  Open pairs pass."""
    prodvec = _basis_products(p)
    eye = np.eye(4, dtype=np.int16)
    for i, j in PAIR_ORDER:
        if i > level or j > level:
            continue
        if len(part) == 0:
            break
        u = part[:, :, i]
        v = part[:, :, j]
        lhs = mult_vec(u, v, p)
        t = (
            mult_vec(u, eye[j], p)
            + mult_vec(eye[i][None, :], v, p)
            + lam * prodvec[i, j][None, :]
        ) % p
        closed = (t[:, level + 1:] == 0).all(axis=1)
        rhs = np.einsum("nkm,nm->nk", part.astype(np.int32), t[:, : level + 1])
        bad = closed & ((lhs - rhs) % p != 0).any(axis=1)
        part = part[~bad]
    return part


def backtracking_scan(p, lam, block=2_000_000):
    """All RB matrices of weight lam over F_p by column-wise constraint
    propagation; packed indices, ascending.  Same set as exhaustive_scan."""
    lam = _check_weight(lam, p)
    cols = _column_values(p)
    nv = len(cols)
    part = cols[:, :, None]  # level 0: column R(1)
    part = _partial_prune(part, 0, lam, p)
    for level in (1, 2, 3):
        survivors = []
        for lo in range(0, len(part), max(1, block // nv)):
            blk = part[lo : lo + max(1, block // nv)]
            n = len(blk)
            ext = np.empty((n * nv, 4, level + 1), dtype=np.int16)
            ext[:, :, :level] = np.repeat(blk, nv, axis=0)
            ext[:, :, level] = np.tile(cols, (n, 1))
            survivors.append(_partial_prune(ext, level, lam, p))
        part = (
            np.concatenate(survivors)
            if survivors
            else np.empty((0, 4, level + 1), dtype=np.int16)
        )
    packed = pack(part, p)
    packed.sort()
    return packed


def enumerate_rb_packed(p, lam, strategy="exhaustive", shards=1):
    """Deterministic packed-index enumeration entry point.

    Sharding splits the scan range (exhaustive) or is a no-op (backtracking);
    results are identical for any shard count.
    """
    if strategy == "exhaustive":
        lam = _check_weight(lam, p)
        if p >= 5:
            raise Infeasible(f"exhaustive scan over F_{p} needs {p}**16 candidates")
        if shards <= 1:
            return exhaustive_scan(p, lam)
        total = p ** 16
        bounds = [total * s // shards for s in range(shards + 1)]
        parts = []
        for lo, hi in zip(bounds, bounds[1:]):
            chunk = 3 ** 12
            found = []
            start = lo
            while start < hi:
                stop = min(start + chunk, hi)
                idx = np.arange(start, stop, dtype=np.int64)
                keep = rb_mask(unpack(idx, p), lam, p)
                found.append(idx[keep])
                start = stop
            parts.append(
                np.concatenate(found) if found else np.empty(0, dtype=np.int64)
            )
        return np.concatenate(parts)
    if strategy == "backtracking":
        return backtracking_scan(p, lam)
    raise ValueError(f"unknown strategy {strategy!r}")
