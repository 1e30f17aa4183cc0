"""Independent floating-point oracle for the softfloat tests.

Rounds exact rational values onto the binary32/binary64 grids using only
host-float machinery (struct, math.nextafter, numpy.float32) and exact
Fraction comparisons. No code is shared with the implementation under test:
rounding decisions here are made by bracketing the exact value between two
adjacent representable numbers and comparing distances as Fractions.
"""

from fractions import Fraction
import math
import struct

import numpy as np

RNE, RTZ, RDN, RUP, RMM = 0, 1, 2, 3, 4
NX, UF, OF, DZ, NV = 1, 2, 4, 8, 16


def d2b(x: float) -> int:
    return struct.unpack("<Q", struct.pack("<d", x))[0]


def b2d(b: int) -> float:
    return struct.unpack("<d", struct.pack("<Q", b))[0]


def s2b(x) -> int:
    return struct.unpack("<I", struct.pack("<f", np.float32(x)))[0]


def b2s(b: int):
    return np.frombuffer(struct.pack("<I", b), dtype=np.float32)[0]


class Grid:
    """One binary format described through host arithmetic only."""

    def __init__(self, is32: bool):
        self.is32 = is32
        if is32:
            self.max_finite = Fraction((2**24 - 1) * 2**104)
            self.overflow_tie = Fraction((2**25 - 1) * 2**103)
            self.top = Fraction(2**128)
            self.min_normal = Fraction(1, 2**126)
            self.max_finite_bits = 0x7F7FFFFF
            self.inf_bits = 0x7F800000
            self.sign_bit = 0x80000000
            self.to_bits = s2b
            self.from_bits = b2s
        else:
            self.max_finite = Fraction((2**53 - 1) * 2**971)
            self.overflow_tie = Fraction((2**54 - 1) * 2**970)
            self.top = Fraction(2**1024)
            self.min_normal = Fraction(1, 2**1022)
            self.max_finite_bits = 0x7FEFFFFFFFFFFFFF
            self.inf_bits = 0x7FF0000000000000
            self.sign_bit = 0x8000000000000000
            self.to_bits = d2b
            self.from_bits = b2d

    def nextafter(self, x, toward_pos: bool):
        if self.is32:
            target = np.float32(np.inf) if toward_pos else np.float32(-np.inf)
            return np.nextafter(np.float32(x), target)
        return math.nextafter(x, math.inf if toward_pos else -math.inf)

    def frac(self, x) -> Fraction:
        return Fraction(float(x))


F32G = Grid(True)
F64G = Grid(False)


def _bracket(g: Grid, mag: Fraction):
    """For 0 < mag <= max_finite: adjacent representables lo <= mag <= hi."""
    try:
        c = float(mag)
    except OverflowError:
        c = math.inf
    if g.is32:
        c = np.float32(c)
    if math.isinf(float(c)):
        c = g.from_bits(g.max_finite_bits)
    while g.frac(c) > mag:
        c = g.nextafter(c, False)
    while True:
        n = g.nextafter(c, True)
        if math.isinf(float(n)) or g.frac(n) > mag:
            break
        c = n
    if g.frac(c) == mag:
        return c, c
    return c, g.nextafter(c, True)


def _pick(g: Grid, mag: Fraction, lo, hi, rm: int, neg: bool):
    """Choose between the bracketing values per rounding mode."""
    flo, fhi = g.frac(lo), g.frac(hi)
    if flo == mag:
        return lo
    toward_zero = rm == RTZ or (rm == RDN and not neg) or (rm == RUP and neg)
    away = (rm == RUP and not neg) or (rm == RDN and neg)
    if toward_zero:
        return lo
    if away:
        return hi
    dl, dh = mag - flo, fhi - mag
    if rm == RMM:
        return hi if dh <= dl else lo
    # RNE
    if dl < dh:
        return lo
    if dh < dl:
        return hi
    return lo if (g.to_bits(lo) & 1) == 0 else hi


def oracle_round(exact: Fraction, rm: int, is32: bool = False):
    """Correctly rounded bits plus NX/OF/UF flags for a nonzero exact value.

    The caller handles special operands (NaN/inf inputs, exact-zero results
    and their sign rules); this covers every finite nonzero rational.
    """
    g = F32G if is32 else F64G
    neg = exact < 0
    sbit = g.sign_bit if neg else 0
    mag = -exact if neg else exact

    if mag > g.max_finite:
        toward_zero = rm == RTZ or (rm == RDN and not neg) or (rm == RUP and neg)
        away = (rm == RUP and not neg) or (rm == RDN and neg)
        if away:
            return g.inf_bits | sbit, OF | NX
        if toward_zero:
            # unbounded rounding only exceeds max finite from g.top upward
            of = OF if mag >= g.top else 0
            return g.max_finite_bits | sbit, of | NX
        # nearest modes: the tie point decides both value and flag
        if mag >= g.overflow_tie:
            return g.inf_bits | sbit, OF | NX
        return g.max_finite_bits | sbit, NX

    lo, hi = _bracket(g, mag)
    chosen = _pick(g, mag, lo, hi, rm, neg)
    nx = g.frac(chosen) != mag
    bits = g.to_bits(chosen) | sbit
    flags = NX if nx else 0

    if nx and mag < g.min_normal:
        # tininess after rounding: scale by a power of two into the normal
        # range (exact operation), round there, compare against min normal
        k = mag.denominator.bit_length() - mag.numerator.bit_length()
        scaled = mag * Fraction(2) ** k
        slo, shi = _bracket(g, scaled)
        unb = g.frac(_pick(g, scaled, slo, shi, rm, neg))
        if unb * Fraction(2) ** (-k) < g.min_normal:
            flags |= UF
    return bits, flags


def frac_of_bits(bits: int, is32: bool = False):
    """Exact rational value of a finite bit pattern; None for inf/NaN."""
    v = float(b2s(bits)) if is32 else b2d(bits)
    if math.isinf(v) or math.isnan(v):
        return None
    return Fraction(v)
