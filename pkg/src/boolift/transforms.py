"""Exact Möbius and Fourier spectra.

Möbius: f(x) = sum_{S subset of x} c(S), i.e. f = sum_S c(S) AND_S.
Fourier coefficients are stored scaled by 2^n so they stay integral.
"""
from dataclasses import dataclass

import numpy as np

from . import config, kernels
from .errors import PreconditionError

ZERO_ONE = "zero-one"
PLUS_MINUS = "plus-minus"


@dataclass(frozen=True)
class MobiusSpectrum:
    arity: int
    masks: np.ndarray   # increasing
    coeffs: np.ndarray  # int64, nonzero

    @property
    def sparsity(self):
        return int(self.masks.size)

    def as_dict(self):
        return {int(m): int(c) for m, c in zip(self.masks, self.coeffs)}

    def dense(self):
        out = np.zeros(1 << self.arity, np.int64)
        out[self.masks] = self.coeffs
        return out

    def serialize(self):
        return [[format(int(m), "x"), int(c)] for m, c in zip(self.masks, self.coeffs)]


@dataclass(frozen=True)
class FourierSpectrum:
    arity: int
    masks: np.ndarray
    scaled_coeffs: np.ndarray  # 2^n * fhat(S)
    convention: str

    @property
    def sparsity(self):
        return int(self.masks.size)

    def as_dict(self):
        return {int(m): int(c) for m, c in zip(self.masks, self.scaled_coeffs)}

    def serialize(self):
        return [[format(int(m), "x"), int(c)] for m, c in zip(self.masks, self.scaled_coeffs)]


def mobius_dense(f):
    """Dense Möbius coefficient array (length 2^n) of a total f."""
    f.require_total("the Möbius transform")
    a = f.table.astype(np.int64)
    kernels.mobius_inplace(a)
    return a


def inverse_mobius(coeffs):
    """Subset sums: the function table whose Möbius coefficients are ``coeffs``."""
    a = np.array(coeffs, dtype=np.int64)
    kernels.zeta_inplace(a)
    return a


def mobius_spectrum(f):
    a = mobius_dense(f)
    masks = np.flatnonzero(a).astype(np.int64)
    return MobiusSpectrum(f.arity, masks, a[masks])


def mobius_support(f):
    return mobius_spectrum(f).masks


def mobius_sparsity(f):
    return int(np.count_nonzero(mobius_dense(f)))


def fourier_dense(f, convention=PLUS_MINUS):
    f.require_total("the Fourier transform")
    if convention == ZERO_ONE:
        a = f.table.astype(np.int64)
    elif convention == PLUS_MINUS:
        a = 1 - 2 * f.table.astype(np.int64)
    else:
        raise PreconditionError(f"unknown convention {convention!r}")
    kernels.walsh_inplace(a)
    return a


def fourier_spectrum(f, convention=PLUS_MINUS):
    a = fourier_dense(f, convention)
    masks = np.flatnonzero(a).astype(np.int64)
    return FourierSpectrum(f.arity, masks, a[masks], convention)


def fourier_sparsity(f, convention=PLUS_MINUS):
    return int(np.count_nonzero(fourier_dense(f, convention)))


def titsworth_check(spec):
    """Check c(W) = sum_{S u T = W} c(S) c(T) over ordered support pairs.

    ``spec`` is a BooleanFunction or a MobiusSpectrum (possibly tampered with).
    Returns (ok, W) where W is the least violating mask, or None.
    """
    if not isinstance(spec, MobiusSpectrum):
        spec = mobius_spectrum(spec)
    n = spec.arity
    config.check(n, config.caps().titsworth_max_arity, "titsworth arity")
    target = spec.dense()
    masks, coeffs = spec.masks, spec.coeffs
    s = masks.size
    big = int(np.abs(coeffs).max()) if s else 0
    if big * big * s * s < (1 << 62):
        h = kernels.union_square(masks, coeffs, 1 << n)
        bad = np.flatnonzero(h != target)
        return (True, None) if bad.size == 0 else (False, int(bad[0]))
    # exact fallback in Python integers
    acc = {}
    cs = [(int(m), int(c)) for m, c in zip(masks, coeffs)]
    for ma, ca in cs:
        for mb, cb in cs:
            acc[ma | mb] = acc.get(ma | mb, 0) + ca * cb
    for w in range(1 << n):
        if acc.get(w, 0) != int(target[w]):
            return False, w
    return True, None


def symmetric_mobius_weights(values):
    """Möbius coefficient at weight w for the symmetric function with given values.

    c_w = sum_j (-1)^(w-j) C(w, j) values[j], exact Python integers.
    """
    from math import comb
    vals = [int(v) for v in values]
    return [sum((-1) ** (w - j) * comb(w, j) * vals[j] for j in range(w + 1))
            for w in range(len(vals))]
