"""Exact change of basis between Weyl-orbit sums and fundamental-orbit monomials.

For a dominant weight x write orb(x) for the monomial symmetric sum over the
orbit W·x (a Laurent polynomial in the eight z-variables).  The eight sums
u_i := orb(w_i) over the fundamental-weight orbits generate the invariant ring,
and every orb(x) is a Z-polynomial in them.  Working with coefficients expanded
over the monomial basis u^l = prod u_i^{l_i} makes products free (exponents
add), while the public orbit-sum basis is recovered through two exact integer
tables:

    mono_to_orbit(l):  u^l      = sum_y  N(l, y)  orb(y)
    orbit_to_mono(x):  orb(x)   = sum_l  c(x, l)  u^l

Both are unitriangular with respect to the dominance order (u^l contains
orb(l) with coefficient exactly 1 and otherwise only dominance-smaller
orbits), so the reduction below, which always eliminates a monomial of
maximal root-coordinate height, terminates and is exact.  N(l, y) is built by
repeated one-orbit convolution passes

    orb(x) * u_i = sum_y  M(x, i; y) orb(y),
    M(x, i; y) = |W x| * #{v in W w_i : dom(x + v) = y} / |W y|,

each a single vectorised dominant-reduction over the fundamental orbit.  The
exactness of the integer division and the total-count conservation law
sum_y N(l, y) |W y| = prod |W w_i|^{l_i} are asserted on every computed row.

u-polynomials are dicts keyed by packed exponents (base 32 per generator), so
monomial multiplication is integer addition of keys.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import config
from .lattice import (
    RANK,
    ZERO,
    decode,
    dominant_batch,
    encode,
    fundamental_orbit,
    orbit_size,
    t_degree,
)

_PACK_BASE = 32
_PACK_POW = tuple(_PACK_BASE ** i for i in range(RANK))
KEY_ONE = 0


def pack(l) -> int:
    key = 0
    for i in range(RANK):
        e = l[i]
        assert 0 <= e < _PACK_BASE, f"exponent {e} out of packing range"
        key += e * _PACK_POW[i]
    return key


def unpack(key: int) -> tuple[int, ...]:
    out = []
    for _ in range(RANK):
        out.append(key % _PACK_BASE)
        key //= _PACK_BASE
    return tuple(out)


_FUND_SIZES = tuple(orbit_size(tuple(int(i == j) for j in range(RANK))) for i in range(RANK))
_STRIP_ORDER = sorted(range(RANK), key=lambda i: _FUND_SIZES[i])

_mpass: dict[tuple[tuple[int, ...], int], dict[tuple[int, ...], int]] = {}
_mono: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
_inv: dict[tuple[int, ...], dict[int, int]] = {}
_mpass_dirty = False


def _orbit_pass(x: tuple[int, ...], i: int) -> dict[tuple[int, ...], int]:
    """Decompose orb(x) * u_i into orbit sums: one vectorised reduction pass."""
    key = (x, i)
    row = _mpass.get(key)
    if row is not None:
        return row
    arr = fundamental_orbit(i) + np.array(x, dtype=np.int64)
    dom = dominant_batch(arr)
    keys, counts = np.unique(encode(dom), return_counts=True)
    sx = orbit_size(x)
    row = {}
    for y, c in zip(decode(keys), counts):
        y = tuple(int(v) for v in y)
        num = sx * int(c)
        sy = orbit_size(y)
        assert num % sy == 0, "orbit product multiplicity must be integral"
        row[y] = num // sy
    _mpass[key] = row
    global _mpass_dirty
    _mpass_dirty = True
    return row


def mono_to_orbit(l: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Orbit-sum decomposition of the monomial u^l (exact integer counts)."""
    l = tuple(l)
    row = _mono.get(l)
    if row is not None:
        return row
    strip = next((i for i in _STRIP_ORDER if l[i]), None)
    if strip is None:
        row = {ZERO: 1}
    else:
        sub = list(l)
        sub[strip] -= 1
        acc: dict[tuple[int, ...], int] = {}
        for y, n in mono_to_orbit(tuple(sub)).items():
            for z, m in _orbit_pass(y, strip).items():
                acc[z] = acc.get(z, 0) + n * m
        row = acc
        total = 1
        for i in range(RANK):
            total *= _FUND_SIZES[i] ** l[i]
        assert sum(n * orbit_size(y) for y, n in row.items()) == total, \
            "orbit count conservation failed"
    _mono[l] = row
    return row


def orbit_to_mono(x: tuple[int, ...]) -> dict[int, int]:
    """u-monomial decomposition of the orbit sum orb(x), as packed keys."""
    x = tuple(x)
    row = _inv.get(x)
    if row is not None:
        return row
    expansion = mono_to_orbit(x)
    assert expansion.get(x) == 1, "u^x must contain orb(x) with coefficient 1"
    acc: dict[int, int] = {pack(x): 1}
    for y, n in expansion.items():
        if y == x:
            continue
        for k, c in orbit_to_mono(y).items():
            v = acc.get(k, 0) - n * c
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
    # evaluation at z = 0 sends u_i -> |W w_i| and orb(x) -> |W x|
    total = 0
    for k, c in acc.items():
        term = c
        for i, e in enumerate(unpack(k)):
            term *= _FUND_SIZES[i] ** e
        total += term
    assert total == orbit_size(x), "orbit-to-monomial inverse is inconsistent"
    _inv[x] = acc
    return acc


def orbit_dict_to_upoly(d: dict[tuple[int, ...], Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for x, c in d.items():
        if not c:
            continue
        for k, n in orbit_to_mono(tuple(x)).items():
            v = out.get(k, 0) + c * n
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


_HEIGHT_CACHE: dict[int, int] = {}


def _key_height(key: int) -> int:
    h = _HEIGHT_CACHE.get(key)
    if h is None:
        from .lattice import height

        h = height(unpack(key))
        _HEIGHT_CACHE[key] = h
    return h


def upoly_to_orbit_dict(p: dict[int, Fraction]) -> dict[tuple[int, ...], Fraction]:
    """Invert orbit_dict_to_upoly by height-maximal triangular elimination."""
    work = {k: Fraction(c) for k, c in p.items() if c}
    out: dict[tuple[int, ...], Fraction] = {}
    while work:
        top = max(work, key=lambda k: (_key_height(k), k))
        c = work.pop(top)
        if not c:
            continue
        x = unpack(top)
        out[x] = c
        for k, n in orbit_to_mono(x).items():
            if k == top:
                continue
            v = work.get(k, 0) - c * n
            if v:
                work[k] = v
            else:
                work.pop(k, None)
    return out


def upoly_mul(a: dict[int, Fraction], b: dict[int, Fraction]) -> dict[int, Fraction]:
    if len(a) > len(b):
        a, b = b, a
    out: dict[int, Fraction] = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def upoly_scale(a: dict[int, Fraction], c: Fraction) -> dict[int, Fraction]:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def upoly_add_into(acc: dict[int, Fraction], a: dict[int, Fraction], c: Fraction) -> None:
    if not c:
        return
    for k, v in a.items():
        w = acc.get(k, 0) + v * c
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)


def upoly_eval_sizes(p: dict[int, Fraction]) -> Fraction:
    """Evaluate at z = 0: substitute u_i -> |W w_i|."""
    total = Fraction(0)
    for k, c in p.items():
        term = c
        for i, e in enumerate(unpack(k)):
            if e:
                term *= _FUND_SIZES[i] ** e
        total += term
    return total


def key_t_degree(key: int) -> int:
    return t_degree(unpack(key))


# ---------------------------------------------------------------------------
# persistence for the convolution-pass table (the only expensive piece)

_TABLE_ID = "orbit-pass-table"


def load_tables() -> None:
    payload = config.get_store().load(_TABLE_ID)
    if not payload:
        return
    for xkey, entry in payload.items():
        x = tuple(int(v) for v in xkey.split(","))
        for istr, row in entry.items():
            key = (x, int(istr))
            if key in _mpass:
                continue
            _mpass[key] = {
                tuple(int(v) for v in ykey.split(",")): int(n) for ykey, n in row.items()
            }


def save_tables() -> None:
    global _mpass_dirty
    if not _mpass_dirty:
        return
    store = config.get_store()
    if not store.enabled:
        return
    payload: dict[str, dict[str, dict[str, int]]] = {}
    for (x, i), row in _mpass.items():
        xkey = ",".join(map(str, x))
        payload.setdefault(xkey, {})[str(i)] = {
            ",".join(map(str, y)): n for y, n in row.items()
        }
    store.store(_TABLE_ID, payload)
    _mpass_dirty = False
