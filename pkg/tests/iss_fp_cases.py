"""Directed floating-point cases run through the full hart.

Expected bit patterns come from host IEEE-754 arithmetic via struct, or are
written out explicitly where the host cannot express them (NaN payloads,
directed rounding, subnormal edges).
"""

import math
import struct

M64 = (1 << 64) - 1
M32 = (1 << 32) - 1
A = 0x8004_0000

NX, UF, OF, DZ, NV = 1, 2, 4, 8, 16


def D(x) -> int:
    return struct.unpack("<Q", struct.pack("<d", x))[0]


def S(x) -> int:
    return struct.unpack("<I", struct.pack("<f", x))[0]


def BOX(b) -> int:
    return 0xFFFF_FFFF_0000_0000 | b


QNAN64 = 0x7FF8_0000_0000_0000
SNAN64 = 0x7FF0_0000_0000_0001
INF64 = 0x7FF0_0000_0000_0000
QNAN32 = 0x7FC0_0000
SNAN32 = 0x7F80_0001
MAX64 = 0x7FEF_FFFF_FFFF_FFFF
F32_THIRD = struct.unpack("<f", struct.pack("<f", 1 / 3))[0]


def fd(op, *ops, rm=""):
    """Feed 64-bit patterns into f1.., run op into f0, capture fflags in a1."""
    parts = []
    for k, b in enumerate(ops):
        parts += [f"li t{k}, {b & M64:#x}", f"fmv.d.x f{k + 1}, t{k}"]
    args = ", ".join(f"f{k + 1}" for k in range(len(ops)))
    tail = f", {rm}" if rm else ""
    return "; ".join(parts + [f"{op} f0, {args}{tail}", "csrr a1, fflags"])


def fs(op, *ops, rm=""):
    parts = []
    for k, b in enumerate(ops):
        parts += [f"li t{k}, {b & M32:#x}", f"fmv.w.x f{k + 1}, t{k}"]
    args = ", ".join(f"f{k + 1}" for k in range(len(ops)))
    tail = f", {rm}" if rm else ""
    return "; ".join(parts + [f"{op} f0, {args}{tail}", "csrr a1, fflags"])


def fd_x(op, *ops, rm=""):
    """Like fd but the result is an x-register (compares, conversions)."""
    parts = []
    for k, b in enumerate(ops):
        parts += [f"li t{k}, {b & M64:#x}", f"fmv.d.x f{k + 1}, t{k}"]
    args = ", ".join(f"f{k + 1}" for k in range(len(ops)))
    tail = f", {rm}" if rm else ""
    return "; ".join(parts + [f"{op} a0, {args}{tail}", "csrr a1, fflags"])


def fs_x(op, *ops, rm=""):
    parts = []
    for k, b in enumerate(ops):
        parts += [f"li t{k}, {b & M32:#x}", f"fmv.w.x f{k + 1}, t{k}"]
    args = ", ".join(f"f{k + 1}" for k in range(len(ops)))
    tail = f", {rm}" if rm else ""
    return "; ".join(parts + [f"{op} a0, {args}{tail}", "csrr a1, fflags"])


def i2f(op, value, rm=""):
    tail = f", {rm}" if rm else ""
    return f"li a0, {value & M64:#x}; {op} f0, a0{tail}; csrr a1, fflags"


def want_d(bits, flags=0):
    return {"fp": True, "f": {"f0": bits}, "x": {"a1": flags}}


def want_s(bits, flags=0):
    return {"fp": True, "f": {"f0": BOX(bits)}, "x": {"a1": flags}}


def want_x(value, flags=0):
    return {"fp": True, "x": {"a0": value, "a1": flags}}


_GARBAGE = 0x1234_5678_9ABC_DEF0

CASES = [
    # ------------------------------------------------ loads, stores, moves
    ("fld-raw-bits",
     f"li t0, {A:#x}; li t1, {D(6.25):#x}; sd t1, 0(t0); fld f1, 0(t0); "
     "fmv.x.d a0, f1",
     {"fp": True, "x": {"a0": D(6.25)}}),
    ("flw-boxes",
     f"li t0, {A:#x}; li t1, {S(2.5):#x}; sw t1, 0(t0); flw f1, 0(t0)",
     {"fp": True, "f": {"f1": BOX(S(2.5))}}),
    ("fsw-writes-low-word",
     f"li t0, {A:#x}; li t1, -1; sd t1, 0(t0); "
     f"li t2, {S(-2.5):#x}; fmv.w.x f1, t2; fsw f1, 0(t0); ld a0, 0(t0)",
     {"fp": True, "x": {"a0": 0xFFFF_FFFF_0000_0000 | S(-2.5)}}),
    ("fsd-preserves-payload",
     f"li t0, {A:#x}; li t1, {SNAN64 + 4:#x}; fmv.d.x f1, t1; fsd f1, 0(t0)",
     {"fp": True, "mem": {A: (8, SNAN64 + 4)}}),
    ("fld-fsd-roundtrip-garbage",
     f"li t0, {A:#x}; li t1, {_GARBAGE:#x}; sd t1, 0(t0); fld f1, 0(t0); "
     "fsd f1, 8(t0)",
     {"fp": True, "mem": {A + 8: (8, _GARBAGE)}}),
    ("fmv-w-x-boxes", f"li t0, {S(1.0):#x}; fmv.w.x f1, t0",
     {"fp": True, "f": {"f1": BOX(S(1.0))}}),
    ("fmv-x-w-sext",
     "li t0, 0x80000001; fmv.w.x f1, t0; fmv.x.w a0, f1",
     {"fp": True, "x": {"a0": 0xFFFF_FFFF_8000_0001}}),
    ("fmv-x-w-positive",
     "li t0, 0x7F800000; fmv.w.x f1, t0; fmv.x.w a0, f1",
     {"fp": True, "x": {"a0": 0x7F80_0000}}),
    ("fmv-d-x-roundtrip",
     f"li t0, {_GARBAGE:#x}; fmv.d.x f1, t0; fmv.x.d a0, f1",
     {"fp": True, "x": {"a0": _GARBAGE}}),
    ("fmv-d-alias-copies-bits",
     f"li t0, {QNAN64 + 1:#x}; fmv.d.x f1, t0; fmv.d f2, f1",
     {"fp": True, "f": {"f2": QNAN64 + 1}}),
    ("fneg-d", f"li t0, {D(1.5):#x}; fmv.d.x f1, t0; fneg.d f0, f1",
     {"fp": True, "f": {"f0": D(-1.5)}}),
    ("fabs-d", f"li t0, {D(-2.5):#x}; fmv.d.x f1, t0; fabs.d f0, f1",
     {"fp": True, "f": {"f0": D(2.5)}}),
    ("fsgnj-s", fs("fsgnj.s", S(1.0), S(-2.0)), want_s(S(-1.0))),
    ("fsgnjn-d", fd("fsgnjn.d", D(1.5), D(2.0)), want_d(D(-1.5))),
    ("fsgnjx-d", fd("fsgnjx.d", D(-1.5), D(-2.0)), want_d(D(1.5))),
    # --------------------------------------------------------- arithmetic
    ("fadd-d-exact", fd("fadd.d", D(1.5), D(0.25)), want_d(D(1.75))),
    ("fadd-s-exact", fs("fadd.s", S(1.5), S(0.25)), want_s(S(1.75))),
    ("fsub-d-exact", fd("fsub.d", D(2.0), D(0.5)), want_d(D(1.5))),
    ("fmul-d-exact", fd("fmul.d", D(1.5), D(2.0)), want_d(D(3.0))),
    ("fdiv-d-exact", fd("fdiv.d", D(1.0), D(4.0)), want_d(D(0.25))),
    ("fadd-d-inexact-small", fd("fadd.d", D(1.0), D(2.0 ** -60)),
     want_d(D(1.0), NX)),
    ("fsub-d-cancel-to-plus-zero", fd("fsub.d", D(1.5), D(1.5)),
     want_d(D(0.0))),
    ("fsub-d-rdn-zero-sign", fd("fsub.d", D(1.5), D(1.5), rm="rdn"),
     want_d(D(-0.0))),
    ("fmul-d-inexact", fd("fmul.d", D(0.1), D(10.0)), want_d(D(1.0), NX)),
    ("fadd-s-inexact", fs("fadd.s", S(1.0), S(2.0 ** -30)),
     want_s(S(1.0), NX)),
    ("fmul-s-exact", fs("fmul.s", S(-1.5), S(2.0)), want_s(S(-3.0))),
    ("fdiv-d-inexact", fd("fdiv.d", D(1.0), D(3.0)), want_d(D(1 / 3), NX)),
    # ------------------------------------------------------- fused ops
    ("fmadd-d-exact", fd("fmadd.d", D(1.5), D(2.0), D(0.25)),
     {"fp": True, "f": {"f0": D(3.25)}, "x": {"a1": 0}, "fp_ops": 2}),
    ("fmsub-d", fd("fmsub.d", D(1.5), D(2.0), D(0.25)), want_d(D(2.75))),
    ("fnmadd-d", fd("fnmadd.d", D(1.5), D(2.0), D(0.25)), want_d(D(-3.25))),
    ("fnmsub-d", fd("fnmsub.d", D(1.5), D(2.0), D(0.25)), want_d(D(-2.75))),
    ("fmadd-d-single-rounding",
     fd("fmadd.d", 0x3FF0_0000_0000_0001, 0x3FF0_0000_0000_0001,
        0xBFF0_0000_0000_0002),
     want_d(D(2.0 ** -104))),
    ("fmadd-s-single-rounding",
     fs("fmadd.s", 0x3F80_0001, 0x3F80_0001, 0xBF80_0002),
     want_s(S(2.0 ** -46))),
    ("fmadd-zero-times-inf", fd("fmadd.d", 0, INF64, D(1.0)),
     want_d(QNAN64, NV)),
    ("fmadd-inf-minus-inf", fd("fmadd.d", D(1.0), INF64, INF64 | 1 << 63),
     want_d(QNAN64, NV)),
    ("fmsub-s", fs("fmsub.s", S(3.0), S(2.0), S(1.0)), want_s(S(5.0))),
    ("fnmadd-keeps-zero-sign", fd("fnmadd.d", D(0.0), D(1.0), D(-0.0)),
     want_d(D(0.0))),
    # ------------------------------------------------- divide, sqrt, range
    ("fdiv-by-zero", fd("fdiv.d", D(1.0), D(0.0)), want_d(INF64, DZ)),
    ("fdiv-by-zero-neg", fd("fdiv.d", D(-1.0), D(0.0)),
     want_d(INF64 | 1 << 63, DZ)),
    ("fdiv-zero-by-zero", fd("fdiv.d", D(0.0), D(0.0)), want_d(QNAN64, NV)),
    ("fdiv-inf-by-inf", fd("fdiv.d", INF64, INF64), want_d(QNAN64, NV)),
    ("fsqrt-exact", fd("fsqrt.d", D(4096.0)), want_d(D(64.0))),
    ("fsqrt-two", fd("fsqrt.d", D(2.0)), want_d(D(math.sqrt(2)), NX)),
    ("fsqrt-negative", fd("fsqrt.d", D(-1.0)), want_d(QNAN64, NV)),
    ("fsqrt-neg-zero", fd("fsqrt.d", D(-0.0)), want_d(D(-0.0))),
    ("fsqrt-s-inexact", fs("fsqrt.s", S(2.0)),
     want_s(S(struct.unpack('<f', struct.pack('<f', math.sqrt(2)))[0]), NX)),
    ("fmul-overflow-rne", fd("fmul.d", MAX64, D(2.0)),
     want_d(INF64, OF | NX)),
    ("fmul-overflow-rtz", fd("fmul.d", MAX64, D(2.0), rm="rtz"),
     want_d(MAX64, OF | NX)),
    ("fmul-underflow-to-zero", fd("fmul.d", D(2.0 ** -1000), D(2.0 ** -100)),
     want_d(D(0.0), UF | NX)),
    ("fdiv-subnormal-exact", fd("fdiv.d", D(2.0 ** -1022), D(2.0)),
     want_d(D(2.0 ** -1023))),
    ("fmul-subnormal-tie", fd("fmul.d", 0x0010_0000_0000_0001, D(0.5)),
     want_d(0x0008_0000_0000_0000, UF | NX)),
    # ------------------------------------------------------ NaN handling
    ("snan-propagates-canonical", fd("fadd.d", SNAN64, D(1.0)),
     want_d(QNAN64, NV)),
    ("qnan-propagates-quiet", fd("fadd.d", QNAN64, D(1.0)), want_d(QNAN64)),
    ("nan-payload-not-kept", fd("fadd.d", 0xFFF8_0000_0000_0007, D(1.0)),
     want_d(QNAN64)),
    ("inf-plus-finite", fd("fadd.d", INF64, D(-1.0)), want_d(INF64)),
    ("inf-minus-inf", fd("fsub.d", INF64, INF64), want_d(QNAN64, NV)),
    # ----------------------------------------------------------- min/max
    ("fmin-d", fd("fmin.d", D(2.0), D(1.0)), want_d(D(1.0))),
    ("fmax-d", fd("fmax.d", D(2.0), D(1.0)), want_d(D(2.0))),
    ("fmin-zeros", fd("fmin.d", D(0.0), D(-0.0)), want_d(D(-0.0))),
    ("fmax-zeros", fd("fmax.d", D(0.0), D(-0.0)), want_d(D(0.0))),
    ("fmin-one-qnan", fd("fmin.d", QNAN64, D(3.0)), want_d(D(3.0))),
    ("fmin-both-nan", fd("fmin.d", QNAN64, QNAN64 | 1 << 63),
     want_d(QNAN64)),
    ("fmin-snan-signals", fd("fmin.d", SNAN64, D(3.0)), want_d(D(3.0), NV)),
    ("fmax-s-unboxed-is-nan",
     f"li t0, {_GARBAGE:#x}; fmv.d.x f1, t0; li t1, {S(1.0):#x}; "
     "fmv.w.x f2, t1; fmax.s f0, f1, f2; csrr a1, fflags",
     want_s(S(1.0))),
    # ---------------------------------------------------------- compares
    ("feq-true", fd_x("feq.d", D(1.5), D(1.5)), want_x(1)),
    ("feq-false", fd_x("feq.d", D(1.5), D(2.0)), want_x(0)),
    ("feq-zeros-equal", fd_x("feq.d", D(0.0), D(-0.0)), want_x(1)),
    ("feq-qnan-quiet", fd_x("feq.d", QNAN64, D(1.0)), want_x(0)),
    ("feq-snan-signals", fd_x("feq.d", SNAN64, D(1.0)), want_x(0, NV)),
    ("flt-true", fd_x("flt.d", D(1.0), D(2.0)), want_x(1)),
    ("flt-false-equal", fd_x("flt.d", D(2.0), D(2.0)), want_x(0)),
    ("flt-qnan-signals", fd_x("flt.d", QNAN64, D(1.0)), want_x(0, NV)),
    ("fle-true-equal", fd_x("fle.d", D(2.0), D(2.0)), want_x(1)),
    ("fle-false", fd_x("fle.d", D(2.0), D(1.0)), want_x(0)),
    ("fle-snan-signals", fd_x("fle.d", D(1.0), SNAN64), want_x(0, NV)),
    ("flt-s-true", fs_x("flt.s", S(-1.0), S(1.0)), want_x(1)),
    ("flt-neg-ordering", fd_x("flt.d", D(-2.0), D(-1.0)), want_x(1)),
    # ------------------------------------------------------------ fclass
    ("fclass-neg-inf", fd_x("fclass.d", INF64 | 1 << 63), want_x(1 << 0)),
    ("fclass-neg-normal", fd_x("fclass.d", D(-1.5)), want_x(1 << 1)),
    ("fclass-neg-subnormal", fd_x("fclass.d", (1 << 63) | 1), want_x(1 << 2)),
    ("fclass-neg-zero", fd_x("fclass.d", 1 << 63), want_x(1 << 3)),
    ("fclass-pos-zero", fd_x("fclass.d", 0), want_x(1 << 4)),
    ("fclass-pos-subnormal", fd_x("fclass.d", 1), want_x(1 << 5)),
    ("fclass-pos-normal", fd_x("fclass.d", D(1.5)), want_x(1 << 6)),
    ("fclass-pos-inf", fd_x("fclass.d", INF64), want_x(1 << 7)),
    ("fclass-snan", fd_x("fclass.d", SNAN64), want_x(1 << 8)),
    ("fclass-qnan", fd_x("fclass.d", QNAN64), want_x(1 << 9)),
    ("fclass-s-unboxed",
     f"li t0, {_GARBAGE:#x}; fmv.d.x f1, t0; fclass.s a0, f1",
     {"fp": True, "x": {"a0": 1 << 9}}),
    ("fclass-s-neg-inf", fs_x("fclass.s", 0xFF80_0000), want_x(1 << 0)),
    # ------------------------------------------------------- conversions
    ("fcvt-w-d-rtz", fd_x("fcvt.w.d", D(-3.75), rm="rtz"), want_x(-3, NX)),
    ("fcvt-w-d-rne-tie", fd_x("fcvt.w.d", D(2.5), rm="rne"), want_x(2, NX)),
    ("fcvt-w-d-rdn", fd_x("fcvt.w.d", D(-0.5), rm="rdn"), want_x(-1, NX)),
    ("fcvt-w-d-rup", fd_x("fcvt.w.d", D(0.5), rm="rup"), want_x(1, NX)),
    ("fcvt-w-d-rmm", fd_x("fcvt.w.d", D(2.5), rm="rmm"), want_x(3, NX)),
    ("fcvt-w-d-exact", fd_x("fcvt.w.d", D(-7.0)), want_x(-7)),
    ("fcvt-w-d-sat-hi", fd_x("fcvt.w.d", D(1e10)), want_x(0x7FFF_FFFF, NV)),
    ("fcvt-w-d-sat-lo", fd_x("fcvt.w.d", D(-1e10)),
     want_x(-(1 << 31), NV)),
    ("fcvt-w-d-nan", fd_x("fcvt.w.d", QNAN64), want_x(0x7FFF_FFFF, NV)),
    ("fcvt-wu-d-negative", fd_x("fcvt.wu.d", D(-1.0)), want_x(0, NV)),
    ("fcvt-wu-d-neg-frac-rtz", fd_x("fcvt.wu.d", D(-0.5), rm="rtz"),
     want_x(0, NX)),
    ("fcvt-wu-d-max-sext", fd_x("fcvt.wu.d", D(4294967295.0)), want_x(-1)),
    ("fcvt-wu-d-sat", fd_x("fcvt.wu.d", D(1e10)), want_x(-1, NV)),
    ("fcvt-l-d-rne", fd_x("fcvt.l.d", D(-2.5)), want_x(-2, NX)),
    ("fcvt-l-d-sat", fd_x("fcvt.l.d", D(1e200)),
     want_x((1 << 63) - 1, NV)),
    ("fcvt-lu-d-two63", fd_x("fcvt.lu.d", D(2.0 ** 63)), want_x(1 << 63)),
    ("fcvt-lu-d-negative", fd_x("fcvt.lu.d", D(-1.0)), want_x(0, NV)),
    ("fcvt-w-s-rtz", fs_x("fcvt.w.s", S(2.5), rm="rtz"), want_x(2, NX)),
    ("fcvt-l-s-exact", fs_x("fcvt.l.s", S(-(2.0 ** 34))),
     want_x(-(1 << 34))),
    ("fcvt-d-w", i2f("fcvt.d.w", -7), want_d(D(-7.0))),
    ("fcvt-d-wu", i2f("fcvt.d.wu", 0xFFFF_FFFF), want_d(D(4294967295.0))),
    ("fcvt-d-w-high-ignored", i2f("fcvt.d.w", 0x1_0000_0005),
     want_d(D(5.0))),
    ("fcvt-d-l-inexact", i2f("fcvt.d.l", (1 << 53) + 1),
     want_d(D(2.0 ** 53), NX)),
    ("fcvt-d-lu-max", i2f("fcvt.d.lu", M64), want_d(D(2.0 ** 64), NX)),
    ("fcvt-s-w-inexact", i2f("fcvt.s.w", 0x7FFF_FFFF),
     want_s(S(2.0 ** 31), NX)),
    ("fcvt-s-l-exact", i2f("fcvt.s.l", 12), want_s(S(12.0))),
    ("fcvt-s-lu-max", i2f("fcvt.s.lu", M64), want_s(S(2.0 ** 64), NX)),
    ("fcvt-s-d-narrows", fd("fcvt.s.d", D(1 / 3)),
     {"fp": True, "f": {"f0": BOX(S(1 / 3))}, "x": {"a1": NX}}),
    ("fcvt-s-d-exact", fd("fcvt.s.d", D(1.5)),
     {"fp": True, "f": {"f0": BOX(S(1.5))}, "x": {"a1": 0}}),
    ("fcvt-s-d-overflow", fd("fcvt.s.d", D(1e200)),
     {"fp": True, "f": {"f0": BOX(0x7F80_0000)}, "x": {"a1": OF | NX}}),
    ("fcvt-d-s-widens-exact", fs("fcvt.d.s", S(1 / 3)),
     {"fp": True, "f": {"f0": D(F32_THIRD)}, "x": {"a1": 0}}),
    ("fcvt-dyn-frm-rtz",
     f"li t0, {D(2.9):#x}; fmv.d.x f1, t0; csrrwi x0, frm, 1; "
     "fcvt.w.d a0, f1; csrr a1, fflags",
     want_x(2, NX)),
    # ------------------------------------------------ state and gating
    ("static-reserved-rm",
     f".word {(1 << 25) | (2 << 20) | (1 << 15) | (5 << 12) | 0x53:#x}",
     {"fp": True, "fatal": 2,
      "mtval": (1 << 25) | (2 << 20) | (1 << 15) | (5 << 12) | 0x53}),
    ("dyn-frm-invalid",
     f"csrrwi x0, frm, 5; li t0, {D(1.0):#x}; fmv.d.x f1, t0; "
     "fadd.d f0, f1, f1",
     {"fp": True, "fatal": 2}),
    ("fs-off-fld-traps", "fld f0, 0(x0)", {"fatal": 2, "mcause": 2}),
    ("fs-off-fflags-traps", "csrr a0, fflags", {"fatal": 2, "mcause": 2}),
    ("fs-off-fmv-traps", "fmv.d.x f0, x0", {"fatal": 2, "mcause": 2}),
    ("fs-enabled-not-dirty",
     "csrr t3, mstatus; srli a2, t3, 63; srli a3, t3, 13; andi a3, a3, 3",
     {"fp": True, "x": {"a2": 0, "a3": 1}}),
    ("fs-dirty-after-op",
     f"li t0, {D(1.0):#x}; fmv.d.x f1, t0; fadd.d f0, f1, f1; "
     "csrr t3, mstatus; srli a2, t3, 63; srli a3, t3, 13; andi a3, a3, 3",
     {"fp": True, "x": {"a2": 1, "a3": 3}}),
    ("fflags-accrue",
     fd("fdiv.d", D(1.0), D(0.0)) + "; fdiv.d f0, f1, f3; csrr a1, fflags",
     {"fp": True, "x": {"a1": DZ | NX}}),
    ("fflags-clear-then-op",
     fd("fdiv.d", D(1.0), D(0.0)) + "; csrw fflags, x0; "
     "fdiv.d f0, f1, f3; csrr a1, fflags",
     {"fp": True, "x": {"a1": NX}}),
    ("fflags-swap-reads-old",
     "csrrwi a0, fflags, 3; csrrwi a2, fflags, 0",
     {"fp": True, "x": {"a0": 0, "a2": 3}}),
    ("fcsr-composes",
     "csrrwi x0, frm, 2; csrrwi x0, fflags, 5; csrr a0, fcsr",
     {"fp": True, "x": {"a0": (2 << 5) | 5}}),
    ("fcsr-write-splits",
     "li t0, 0xFF; csrw fcsr, t0; csrr a0, frm; csrr a2, fflags",
     {"fp": True, "x": {"a0": 7, "a2": 0x1F}}),
    ("frm-warl-3-bits", "li t0, 15; csrw frm, t0; csrr a0, frm",
     {"fp": True, "x": {"a0": 7}}),
    ("fadd-s-unboxed-operand",
     f"li t0, {_GARBAGE:#x}; fmv.d.x f1, t0; li t1, {S(1.0):#x}; "
     "fmv.w.x f2, t1; fadd.s f0, f1, f2; csrr a1, fflags",
     want_s(QNAN32)),
    ("flw-misaligned", f"li t0, {A + 2:#x}; flw f0, 0(t0)",
     {"fp": True, "fatal": 4, "mtval": A + 2}),
    ("fsd-misaligned", f"li t0, {A + 4:#x}; fsd f0, 0(t0)",
     {"fp": True, "fatal": 6, "mtval": A + 4}),
    ("fp-op-counting",
     "; ".join([f"li t0, {D(1.5):#x}", "fmv.d.x f1, t0",
                f"li t1, {D(2.0):#x}", "fmv.d.x f2, t1",
                "fadd.d f3, f1, f2",      # 1
                "fdiv.d f4, f1, f2",      # 1
                "fsqrt.d f5, f2",         # 1
                "fmadd.d f6, f1, f2, f3",  # 2
                "fmin.d f7, f1, f2",      # 0
                "feq.d a0, f1, f2",       # 0
                "fcvt.w.d a2, f4"]),      # 0
     {"fp": True, "fp_ops": 5}),
]

CASES = [("fp-" + n, s, c) for n, s, c in CASES]
