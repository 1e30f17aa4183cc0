"""Bit-exact IEEE-754 binary32/binary64 arithmetic on plain integers.

Every operation computes the exact result as an integer significand times a
power of two, then rounds exactly once in the requested mode. Tininess is
detected after rounding: a result is subnormal-handled only when the
unbounded-exponent rounding lands strictly below the smallest normal, which is
also when the underflow flag may rise (and then only if inexact). Operands and
results are raw bit patterns; NaN results are always the canonical quiet NaN
of the format. Flag bits follow the fflags layout (NX lsb .. NV bit 4).
"""

from __future__ import annotations

from math import isqrt

# rounding modes, fcsr.frm encoding
RNE, RTZ, RDN, RUP, RMM = 0, 1, 2, 3, 4

# exception flags, fcsr.fflags layout
NX, UF, OF, DZ, NV = 1, 2, 4, 8, 16

# operand kinds from _unpack
_ZERO, _FIN, _INF, _NAN = 0, 1, 2, 3


class Fmt:
    """Format constants for one IEEE binary interchange format."""

    __slots__ = (
        "ebits", "fbits", "width", "bias", "prec", "exp_mask", "frac_mask",
        "sign_bit", "qnan", "inf", "max_finite", "emin", "mask",
    )

    def __init__(self, ebits: int, fbits: int):
        self.ebits = ebits
        self.fbits = fbits
        self.width = 1 + ebits + fbits
        self.bias = (1 << (ebits - 1)) - 1
        self.prec = fbits + 1
        self.exp_mask = (1 << ebits) - 1
        self.frac_mask = (1 << fbits) - 1
        self.sign_bit = 1 << (self.width - 1)
        self.qnan = (self.exp_mask << fbits) | (1 << (fbits - 1))
        self.inf = self.exp_mask << fbits
        self.max_finite = ((self.exp_mask - 1) << fbits) | self.frac_mask
        self.emin = 1 - self.bias
        self.mask = (1 << self.width) - 1


F32 = Fmt(8, 23)
F64 = Fmt(11, 52)


def _unpack(fmt: Fmt, x: int):
    """Split bits into (sign, kind, significand, exponent, is_snan).

    For finite nonzero values the pair (m, e) satisfies value = m * 2**e with
    m a positive integer (hidden bit included for normals).
    """
    s = (x >> (fmt.width - 1)) & 1
    be = (x >> fmt.fbits) & fmt.exp_mask
    frac = x & fmt.frac_mask
    if be == fmt.exp_mask:
        if frac:
            snan = not (frac >> (fmt.fbits - 1)) & 1
            return s, _NAN, 0, 0, snan
        return s, _INF, 0, 0, False
    if be == 0:
        if frac == 0:
            return s, _ZERO, 0, 0, False
        return s, _FIN, frac, fmt.emin - fmt.fbits, False
    return s, _FIN, frac | (1 << fmt.fbits), be - fmt.bias - fmt.fbits, False


def _zero(fmt: Fmt, sign: int) -> int:
    return sign << (fmt.width - 1)


def _inf_bits(fmt: Fmt, sign: int) -> int:
    return (sign << (fmt.width - 1)) | fmt.inf


def _round_mag(sign: int, m: int, sh: int, rm: int):
    """Shift m right by sh > 0 bits, rounding the magnitude per rm.

    sign is the sign of the full value (round-direction modes need it).
    Returns (q, inexact).
    """
    drop = m & ((1 << sh) - 1)
    q = m >> sh
    if not drop:
        return q, False
    if rm == RNE:
        half = 1 << (sh - 1)
        if drop > half or (drop == half and (q & 1)):
            q += 1
    elif rm == RDN:
        if sign:
            q += 1
    elif rm == RUP:
        if not sign:
            q += 1
    elif rm == RMM:
        if drop >= 1 << (sh - 1):
            q += 1
    return q, True


def _round_pack(fmt: Fmt, sign: int, m: int, e: int, rm: int):
    """Round the exact nonzero value (-1)^sign * m * 2^e into fmt bits."""
    # first rounding: p significant bits, unbounded exponent range
    sh = m.bit_length() - fmt.prec
    if sh > 0:
        q, nx = _round_mag(sign, m, sh, rm)
        if q == (1 << fmt.prec):
            q >>= 1
            sh += 1
    else:
        q, nx = m << -sh, False
    exp = e + sh + fmt.fbits  # unbiased exponent of the 1.f form

    if exp > fmt.bias:
        # overflow: round mode picks infinity or the largest finite
        if rm == RTZ or (rm == RDN and not sign) or (rm == RUP and sign):
            return _zero(fmt, sign) | fmt.max_finite, OF | NX
        return _inf_bits(fmt, sign), OF | NX

    if exp >= fmt.emin:
        be = exp + fmt.bias
        return _zero(fmt, sign) | (be << fmt.fbits) | (q & fmt.frac_mask), (NX if nx else 0)

    # tiny after rounding: re-round the exact value at the subnormal quantum
    qexp = fmt.emin - fmt.fbits
    sh2 = qexp - e
    if sh2 <= 0:
        fixed, nx2 = m << -sh2, False
    else:
        fixed, nx2 = _round_mag(sign, m, sh2, rm)
    flags = (UF | NX) if nx2 else 0
    if fixed == 1 << fmt.fbits:
        # rounded up to the smallest normal
        return _zero(fmt, sign) | (1 << fmt.fbits), flags
    return _zero(fmt, sign) | fixed, flags


def _nan_result(fmt: Fmt, *snans: bool):
    return fmt.qnan, (NV if any(snans) else 0)


def fadd(fmt: Fmt, a: int, b: int, rm: int):
    return _addsub(fmt, a, b, rm, False)


def fsub(fmt: Fmt, a: int, b: int, rm: int):
    return _addsub(fmt, a, b, rm, True)


def _addsub(fmt: Fmt, a: int, b: int, rm: int, neg_b: bool):
    sa, ka, ma, ea, sna = _unpack(fmt, a)
    sb, kb, mb, eb, snb = _unpack(fmt, b)
    if neg_b:
        sb ^= 1
    if ka == _NAN or kb == _NAN:
        return _nan_result(fmt, sna, snb)
    if ka == _INF and kb == _INF:
        if sa != sb:
            return fmt.qnan, NV
        return _inf_bits(fmt, sa), 0
    if ka == _INF:
        return _inf_bits(fmt, sa), 0
    if kb == _INF:
        return _inf_bits(fmt, sb), 0
    if ka == _ZERO and kb == _ZERO:
        sign = sa if sa == sb else (1 if rm == RDN else 0)
        return _zero(fmt, sign), 0
    if ka == _ZERO:
        return (b ^ (fmt.sign_bit if neg_b else 0)), 0
    if kb == _ZERO:
        return a, 0
    e = ea if ea < eb else eb
    s = (ma << (ea - e)) if not sa else -(ma << (ea - e))
    s += (mb << (eb - e)) if not sb else -(mb << (eb - e))
    if s == 0:
        return _zero(fmt, 1 if rm == RDN else 0), 0
    if s < 0:
        return _round_pack(fmt, 1, -s, e, rm)
    return _round_pack(fmt, 0, s, e, rm)


def fmul(fmt: Fmt, a: int, b: int, rm: int):
    sa, ka, ma, ea, sna = _unpack(fmt, a)
    sb, kb, mb, eb, snb = _unpack(fmt, b)
    sign = sa ^ sb
    if ka == _NAN or kb == _NAN:
        return _nan_result(fmt, sna, snb)
    if ka == _INF or kb == _INF:
        if ka == _ZERO or kb == _ZERO:
            return fmt.qnan, NV
        return _inf_bits(fmt, sign), 0
    if ka == _ZERO or kb == _ZERO:
        return _zero(fmt, sign), 0
    return _round_pack(fmt, sign, ma * mb, ea + eb, rm)


def fdiv(fmt: Fmt, a: int, b: int, rm: int):
    sa, ka, ma, ea, sna = _unpack(fmt, a)
    sb, kb, mb, eb, snb = _unpack(fmt, b)
    sign = sa ^ sb
    if ka == _NAN or kb == _NAN:
        return _nan_result(fmt, sna, snb)
    if ka == _INF:
        if kb == _INF:
            return fmt.qnan, NV
        return _inf_bits(fmt, sign), 0
    if kb == _INF:
        return _zero(fmt, sign), 0
    if kb == _ZERO:
        if ka == _ZERO:
            return fmt.qnan, NV
        return _inf_bits(fmt, sign), DZ
    if ka == _ZERO:
        return _zero(fmt, sign), 0
    # quotient with >= prec+3 bits, sticky remainder in the lsb
    sh = mb.bit_length() - ma.bit_length() + fmt.prec + 3
    q, r = divmod(ma << sh, mb)
    if r:
        q |= 1
    return _round_pack(fmt, sign, q, ea - eb - sh, rm)


def fsqrt(fmt: Fmt, a: int, rm: int):
    sa, ka, ma, ea, sna = _unpack(fmt, a)
    if ka == _NAN:
        return _nan_result(fmt, sna)
    if ka == _ZERO:
        return _zero(fmt, sa), 0
    if sa:
        return fmt.qnan, NV
    if ka == _INF:
        return _inf_bits(fmt, 0), 0
    # scale so the root keeps >= prec+3 bits and the exponent stays even
    k = max(0, 2 * (fmt.prec + 3) - ma.bit_length())
    if (ea - k) & 1:
        k += 1
    big = ma << k
    r = isqrt(big)
    e2 = (ea - k) >> 1
    if r * r != big:
        # widen by one sticky bit; exponent weight drops accordingly
        return _round_pack(fmt, 0, (r << 1) | 1, e2 - 1, rm)
    return _round_pack(fmt, 0, r, e2, rm)


def ffma(fmt: Fmt, a: int, b: int, c: int, rm: int):
    """Fused a*b + c with a single rounding."""
    sa, ka, ma, ea, sna = _unpack(fmt, a)
    sb, kb, mb, eb, snb = _unpack(fmt, b)
    sc, kc, mc, ec, snc = _unpack(fmt, c)
    zero_times_inf = (ka == _ZERO and kb == _INF) or (ka == _INF and kb == _ZERO)
    if ka == _NAN or kb == _NAN or kc == _NAN:
        return fmt.qnan, (NV if (sna or snb or snc or zero_times_inf) else 0)
    if zero_times_inf:
        return fmt.qnan, NV
    psign = sa ^ sb
    if ka == _INF or kb == _INF:
        if kc == _INF and sc != psign:
            return fmt.qnan, NV
        return _inf_bits(fmt, psign), 0
    if kc == _INF:
        return _inf_bits(fmt, sc), 0
    if ka == _ZERO or kb == _ZERO:
        if kc == _ZERO:
            sign = psign if psign == sc else (1 if rm == RDN else 0)
            return _zero(fmt, sign), 0
        return c, 0
    pm, pe = ma * mb, ea + eb
    if kc == _ZERO:
        return _round_pack(fmt, psign, pm, pe, rm)
    e = pe if pe < ec else ec
    s = (pm << (pe - e)) if not psign else -(pm << (pe - e))
    s += (mc << (ec - e)) if not sc else -(mc << (ec - e))
    if s == 0:
        return _zero(fmt, 1 if rm == RDN else 0), 0
    if s < 0:
        return _round_pack(fmt, 1, -s, e, rm)
    return _round_pack(fmt, 0, s, e, rm)


def _order_key(fmt: Fmt, x: int) -> int:
    """Monotonic integer key for non-NaN operands; both zeros map to 0."""
    mag = x & ~fmt.sign_bit & fmt.mask
    return -mag if (x & fmt.sign_bit) else mag


def fcmp_eq(fmt: Fmt, a: int, b: int):
    sa, ka, _, _, sna = _unpack(fmt, a)
    sb, kb, _, _, snb = _unpack(fmt, b)
    if ka == _NAN or kb == _NAN:
        return 0, (NV if (sna or snb) else 0)
    return (1 if _order_key(fmt, a) == _order_key(fmt, b) else 0), 0


def fcmp_lt(fmt: Fmt, a: int, b: int):
    _, ka, _, _, _ = _unpack(fmt, a)
    _, kb, _, _, _ = _unpack(fmt, b)
    if ka == _NAN or kb == _NAN:
        return 0, NV
    return (1 if _order_key(fmt, a) < _order_key(fmt, b) else 0), 0


def fcmp_le(fmt: Fmt, a: int, b: int):
    _, ka, _, _, _ = _unpack(fmt, a)
    _, kb, _, _, _ = _unpack(fmt, b)
    if ka == _NAN or kb == _NAN:
        return 0, NV
    return (1 if _order_key(fmt, a) <= _order_key(fmt, b) else 0), 0


def fminmax(fmt: Fmt, a: int, b: int, pick_max: bool):
    """RISC-V fmin/fmax: NaN yields the other operand, -0 orders below +0."""
    _, ka, _, _, sna = _unpack(fmt, a)
    _, kb, _, _, snb = _unpack(fmt, b)
    flags = NV if (sna or snb) else 0
    if ka == _NAN and kb == _NAN:
        return fmt.qnan, flags
    if ka == _NAN:
        return b, flags
    if kb == _NAN:
        return a, flags
    kea, keb = _order_key(fmt, a), _order_key(fmt, b)
    if kea == keb:
        # only ambiguous for the (+0, -0) pair; pick by sign bit
        neg = a if (a & fmt.sign_bit) else b
        pos = b if (a & fmt.sign_bit) else a
        return (pos if pick_max else neg), flags
    if pick_max:
        return (a if kea > keb else b), flags
    return (a if kea < keb else b), flags


# fclass result bit positions
FCLASS_NEG_INF = 1 << 0
FCLASS_NEG_NORM = 1 << 1
FCLASS_NEG_SUB = 1 << 2
FCLASS_NEG_ZERO = 1 << 3
FCLASS_POS_ZERO = 1 << 4
FCLASS_POS_SUB = 1 << 5
FCLASS_POS_NORM = 1 << 6
FCLASS_POS_INF = 1 << 7
FCLASS_SNAN = 1 << 8
FCLASS_QNAN = 1 << 9


def fclass(fmt: Fmt, x: int) -> int:
    s = (x >> (fmt.width - 1)) & 1
    be = (x >> fmt.fbits) & fmt.exp_mask
    frac = x & fmt.frac_mask
    if be == fmt.exp_mask:
        if frac:
            return FCLASS_QNAN if (frac >> (fmt.fbits - 1)) & 1 else FCLASS_SNAN
        return FCLASS_NEG_INF if s else FCLASS_POS_INF
    if be == 0:
        if frac == 0:
            return FCLASS_NEG_ZERO if s else FCLASS_POS_ZERO
        return FCLASS_NEG_SUB if s else FCLASS_POS_SUB
    return FCLASS_NEG_NORM if s else FCLASS_POS_NORM


def f_to_int(fmt: Fmt, x: int, rm: int, bits: int, signed: bool):
    """Convert to an integer of the given width; returns (value, flags).

    The value is a Python int within the target range (negative allowed for
    signed targets). Out-of-range inputs, infinities and NaNs clamp with NV;
    NaN clamps to the most positive value.
    """
    if signed:
        lo, hi = -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    else:
        lo, hi = 0, (1 << bits) - 1
    s, k, m, e, _ = _unpack(fmt, x)
    if k == _NAN:
        return hi, NV
    if k == _INF:
        return (lo if s else hi), NV
    if k == _ZERO:
        return 0, 0
    if e >= 0:
        mag, nx = m << e, False
    else:
        mag, nx = _round_mag(s, m, -e, rm)
    v = -mag if s else mag
    if v < lo:
        return lo, NV
    if v > hi:
        return hi, NV
    return v, (NX if nx else 0)


def int_to_f(fmt: Fmt, v: int, rm: int):
    """Convert a Python integer (any width, signed value) to fmt bits."""
    if v == 0:
        return 0, 0
    if v < 0:
        return _round_pack(fmt, 1, -v, 0, rm)
    return _round_pack(fmt, 0, v, 0, rm)


def f32_to_f64(x: int):
    s, k, m, e, sn = _unpack(F32, x)
    if k == _NAN:
        return F64.qnan, (NV if sn else 0)
    if k == _INF:
        return _inf_bits(F64, s), 0
    if k == _ZERO:
        return _zero(F64, s), 0
    return _round_pack(F64, s, m, e, RNE)  # exact, never rounds


def f64_to_f32(x: int, rm: int):
    s, k, m, e, sn = _unpack(F64, x)
    if k == _NAN:
        return F32.qnan, (NV if sn else 0)
    if k == _INF:
        return _inf_bits(F32, s), 0
    if k == _ZERO:
        return _zero(F32, s), 0
    return _round_pack(F32, s, m, e, rm)
