"""RV64IMAFDC + Zicsr + Zifencei instruction decoder.

decode() maps a raw 16- or 32-bit encoding to an Instr carrying a canonical
mnemonic and extracted operands; compressed encodings expand to the same
mnemonic and operands as their 32-bit counterparts. Unknown encodings yield
op="illegal" rather than raising, so the core can turn them into traps.
"""

from __future__ import annotations


class Instr:
    __slots__ = ("op", "rd", "rs1", "rs2", "rs3", "imm", "rm", "size", "raw")

    def __init__(self, op, rd=0, rs1=0, rs2=0, rs3=0, imm=0, rm=0, size=4, raw=0):
        self.op = op
        self.rd = rd
        self.rs1 = rs1
        self.rs2 = rs2
        self.rs3 = rs3
        self.imm = imm
        self.rm = rm
        self.size = size
        self.raw = raw

    def __repr__(self):
        return (
            f"Instr({self.op!r}, rd={self.rd}, rs1={self.rs1}, rs2={self.rs2},"
            f" rs3={self.rs3}, imm={self.imm:#x}, rm={self.rm}, size={self.size})"
        )

    def __eq__(self, other):
        return isinstance(other, Instr) and all(
            getattr(self, f) == getattr(other, f)
            for f in ("op", "rd", "rs1", "rs2", "rs3", "imm", "rm", "size")
        )


def _sx(v: int, bits: int) -> int:
    return v - (1 << bits) if v & (1 << (bits - 1)) else v


def _illegal(raw: int, size: int = 4) -> Instr:
    return Instr("illegal", imm=raw, size=size, raw=raw)


# canonical mnemonics the decoder can produce (excluding "illegal")
OPS = frozenset([
    # RV64I
    "lui", "auipc", "jal", "jalr",
    "beq", "bne", "blt", "bge", "bltu", "bgeu",
    "lb", "lh", "lw", "ld", "lbu", "lhu", "lwu",
    "sb", "sh", "sw", "sd",
    "addi", "slti", "sltiu", "xori", "ori", "andi", "slli", "srli", "srai",
    "add", "sub", "sll", "slt", "sltu", "xor", "srl", "sra", "or", "and",
    "addiw", "slliw", "srliw", "sraiw",
    "addw", "subw", "sllw", "srlw", "sraw",
    "fence", "fence.i", "ecall", "ebreak",
    # Zicsr
    "csrrw", "csrrs", "csrrc", "csrrwi", "csrrsi", "csrrci",
    # M
    "mul", "mulh", "mulhsu", "mulhu", "div", "divu", "rem", "remu",
    "mulw", "divw", "divuw", "remw", "remuw",
    # A
    "lr.w", "sc.w", "amoswap.w", "amoadd.w", "amoxor.w", "amoand.w",
    "amoor.w", "amomin.w", "amomax.w", "amominu.w", "amomaxu.w",
    "lr.d", "sc.d", "amoswap.d", "amoadd.d", "amoxor.d", "amoand.d",
    "amoor.d", "amomin.d", "amomax.d", "amominu.d", "amomaxu.d",
    # F
    "flw", "fsw",
    "fmadd.s", "fmsub.s", "fnmsub.s", "fnmadd.s",
    "fadd.s", "fsub.s", "fmul.s", "fdiv.s", "fsqrt.s",
    "fsgnj.s", "fsgnjn.s", "fsgnjx.s", "fmin.s", "fmax.s",
    "fcvt.w.s", "fcvt.wu.s", "fcvt.l.s", "fcvt.lu.s",
    "fcvt.s.w", "fcvt.s.wu", "fcvt.s.l", "fcvt.s.lu",
    "fmv.x.w", "fmv.w.x", "feq.s", "flt.s", "fle.s", "fclass.s",
    # D
    "fld", "fsd",
    "fmadd.d", "fmsub.d", "fnmsub.d", "fnmadd.d",
    "fadd.d", "fsub.d", "fmul.d", "fdiv.d", "fsqrt.d",
    "fsgnj.d", "fsgnjn.d", "fsgnjx.d", "fmin.d", "fmax.d",
    "fcvt.w.d", "fcvt.wu.d", "fcvt.l.d", "fcvt.lu.d",
    "fcvt.d.w", "fcvt.d.wu", "fcvt.d.l", "fcvt.d.lu",
    "fcvt.s.d", "fcvt.d.s",
    "fmv.x.d", "fmv.d.x", "feq.d", "flt.d", "fle.d", "fclass.d",
    # privileged
    "mret", "sret", "wfi", "sfence.vma",
])


def decode(raw: int) -> Instr:
    """Decode one encoding; 16-bit when the low two bits are not 0b11."""
    if raw & 3 != 3:
        return _decode16(raw & 0xFFFF)
    return _decode32(raw & 0xFFFFFFFF)


# --------------------------------------------------------------- 32-bit part

def _decode32(w: int) -> Instr:
    opcode = w & 0x7F
    rd = (w >> 7) & 31
    f3 = (w >> 12) & 7
    rs1 = (w >> 15) & 31
    rs2 = (w >> 20) & 31
    f7 = (w >> 25) & 0x7F
    handler = _OPCODE32.get(opcode)
    if handler is None:
        return _illegal(w)
    return handler(w, rd, f3, rs1, rs2, f7)


def _imm_i(w: int) -> int:
    return _sx(w >> 20, 12)


def _imm_s(w: int) -> int:
    return _sx(((w >> 25) << 5) | ((w >> 7) & 31), 12)


def _imm_b(w: int) -> int:
    v = (((w >> 31) & 1) << 12) | (((w >> 7) & 1) << 11) \
        | (((w >> 25) & 0x3F) << 5) | (((w >> 8) & 0xF) << 1)
    return _sx(v, 13)


def _imm_j(w: int) -> int:
    v = (((w >> 31) & 1) << 20) | (((w >> 12) & 0xFF) << 12) \
        | (((w >> 20) & 1) << 11) | (((w >> 21) & 0x3FF) << 1)
    return _sx(v, 21)


def _dec_lui(w, rd, f3, rs1, rs2, f7):
    return Instr("lui", rd=rd, imm=_sx(w & 0xFFFFF000, 32), raw=w)


def _dec_auipc(w, rd, f3, rs1, rs2, f7):
    return Instr("auipc", rd=rd, imm=_sx(w & 0xFFFFF000, 32), raw=w)


def _dec_jal(w, rd, f3, rs1, rs2, f7):
    return Instr("jal", rd=rd, imm=_imm_j(w), raw=w)


def _dec_jalr(w, rd, f3, rs1, rs2, f7):
    if f3 != 0:
        return _illegal(w)
    return Instr("jalr", rd=rd, rs1=rs1, imm=_imm_i(w), raw=w)


_BRANCHES = {0: "beq", 1: "bne", 4: "blt", 5: "bge", 6: "bltu", 7: "bgeu"}


def _dec_branch(w, rd, f3, rs1, rs2, f7):
    op = _BRANCHES.get(f3)
    if op is None:
        return _illegal(w)
    return Instr(op, rs1=rs1, rs2=rs2, imm=_imm_b(w), raw=w)


_LOADS = {0: "lb", 1: "lh", 2: "lw", 3: "ld", 4: "lbu", 5: "lhu", 6: "lwu"}


def _dec_load(w, rd, f3, rs1, rs2, f7):
    op = _LOADS.get(f3)
    if op is None:
        return _illegal(w)
    return Instr(op, rd=rd, rs1=rs1, imm=_imm_i(w), raw=w)


_STORES = {0: "sb", 1: "sh", 2: "sw", 3: "sd"}


def _dec_store(w, rd, f3, rs1, rs2, f7):
    op = _STORES.get(f3)
    if op is None:
        return _illegal(w)
    return Instr(op, rs1=rs1, rs2=rs2, imm=_imm_s(w), raw=w)


def _dec_opimm(w, rd, f3, rs1, rs2, f7):
    imm = _imm_i(w)
    if f3 == 0:
        return Instr("addi", rd=rd, rs1=rs1, imm=imm, raw=w)
    if f3 == 2:
        return Instr("slti", rd=rd, rs1=rs1, imm=imm, raw=w)
    if f3 == 3:
        return Instr("sltiu", rd=rd, rs1=rs1, imm=imm, raw=w)
    if f3 == 4:
        return Instr("xori", rd=rd, rs1=rs1, imm=imm, raw=w)
    if f3 == 6:
        return Instr("ori", rd=rd, rs1=rs1, imm=imm, raw=w)
    if f3 == 7:
        return Instr("andi", rd=rd, rs1=rs1, imm=imm, raw=w)
    shamt = (w >> 20) & 0x3F
    f6 = w >> 26
    if f3 == 1 and f6 == 0:
        return Instr("slli", rd=rd, rs1=rs1, imm=shamt, raw=w)
    if f3 == 5 and f6 == 0:
        return Instr("srli", rd=rd, rs1=rs1, imm=shamt, raw=w)
    if f3 == 5 and f6 == 0x10:
        return Instr("srai", rd=rd, rs1=rs1, imm=shamt, raw=w)
    return _illegal(w)


def _dec_opimm32(w, rd, f3, rs1, rs2, f7):
    if f3 == 0:
        return Instr("addiw", rd=rd, rs1=rs1, imm=_imm_i(w), raw=w)
    shamt = (w >> 20) & 31
    if f3 == 1 and f7 == 0:
        return Instr("slliw", rd=rd, rs1=rs1, imm=shamt, raw=w)
    if f3 == 5 and f7 == 0:
        return Instr("srliw", rd=rd, rs1=rs1, imm=shamt, raw=w)
    if f3 == 5 and f7 == 0x20:
        return Instr("sraiw", rd=rd, rs1=rs1, imm=shamt, raw=w)
    return _illegal(w)


_OP_BASE = {
    (0, 0): "add", (0x20, 0): "sub", (0, 1): "sll", (0, 2): "slt",
    (0, 3): "sltu", (0, 4): "xor", (0, 5): "srl", (0x20, 5): "sra",
    (0, 6): "or", (0, 7): "and",
    (1, 0): "mul", (1, 1): "mulh", (1, 2): "mulhsu", (1, 3): "mulhu",
    (1, 4): "div", (1, 5): "divu", (1, 6): "rem", (1, 7): "remu",
}

_OP32_BASE = {
    (0, 0): "addw", (0x20, 0): "subw", (0, 1): "sllw",
    (0, 5): "srlw", (0x20, 5): "sraw",
    (1, 0): "mulw", (1, 4): "divw", (1, 5): "divuw",
    (1, 6): "remw", (1, 7): "remuw",
}


def _dec_op(w, rd, f3, rs1, rs2, f7):
    op = _OP_BASE.get((f7, f3))
    if op is None:
        return _illegal(w)
    return Instr(op, rd=rd, rs1=rs1, rs2=rs2, raw=w)


def _dec_op32(w, rd, f3, rs1, rs2, f7):
    op = _OP32_BASE.get((f7, f3))
    if op is None:
        return _illegal(w)
    return Instr(op, rd=rd, rs1=rs1, rs2=rs2, raw=w)


def _dec_miscmem(w, rd, f3, rs1, rs2, f7):
    if f3 == 0:
        return Instr("fence", rd=rd, rs1=rs1, imm=_imm_i(w), raw=w)
    if f3 == 1:
        return Instr("fence.i", rd=rd, rs1=rs1, imm=_imm_i(w), raw=w)
    return _illegal(w)


_CSR_OPS = {1: "csrrw", 2: "csrrs", 3: "csrrc", 5: "csrrwi", 6: "csrrsi", 7: "csrrci"}


def _dec_system(w, rd, f3, rs1, rs2, f7):
    if f3 == 0:
        if w == 0x00000073:
            return Instr("ecall", raw=w)
        if w == 0x00100073:
            return Instr("ebreak", raw=w)
        if w == 0x30200073:
            return Instr("mret", raw=w)
        if w == 0x10200073:
            return Instr("sret", raw=w)
        if w == 0x10500073:
            return Instr("wfi", raw=w)
        if f7 == 0x09 and rd == 0:
            return Instr("sfence.vma", rs1=rs1, rs2=rs2, raw=w)
        return _illegal(w)
    op = _CSR_OPS.get(f3)
    if op is None:
        return _illegal(w)
    return Instr(op, rd=rd, rs1=rs1, imm=w >> 20, raw=w)


_AMO_OPS = {
    0x00: "amoadd", 0x01: "amoswap", 0x02: "lr", 0x03: "sc",
    0x04: "amoxor", 0x08: "amoor", 0x0C: "amoand",
    0x10: "amomin", 0x14: "amomax", 0x18: "amominu", 0x1C: "amomaxu",
}


def _dec_amo(w, rd, f3, rs1, rs2, f7):
    if f3 not in (2, 3):
        return _illegal(w)
    base = _AMO_OPS.get(f7 >> 2)
    if base is None:
        return _illegal(w)
    if base == "lr" and rs2 != 0:
        return _illegal(w)
    suffix = ".w" if f3 == 2 else ".d"
    return Instr(base + suffix, rd=rd, rs1=rs1, rs2=rs2, raw=w)


def _dec_loadfp(w, rd, f3, rs1, rs2, f7):
    if f3 == 2:
        return Instr("flw", rd=rd, rs1=rs1, imm=_imm_i(w), raw=w)
    if f3 == 3:
        return Instr("fld", rd=rd, rs1=rs1, imm=_imm_i(w), raw=w)
    return _illegal(w)


def _dec_storefp(w, rd, f3, rs1, rs2, f7):
    if f3 == 2:
        return Instr("fsw", rs1=rs1, rs2=rs2, imm=_imm_s(w), raw=w)
    if f3 == 3:
        return Instr("fsd", rs1=rs1, rs2=rs2, imm=_imm_s(w), raw=w)
    return _illegal(w)


_FMA_NAMES = {0x43: "fmadd", 0x47: "fmsub", 0x4B: "fnmsub", 0x4F: "fnmadd"}


def _dec_fma(w, rd, f3, rs1, rs2, f7):
    fmt = f7 & 3
    if fmt > 1:
        return _illegal(w)
    name = _FMA_NAMES[w & 0x7F] + (".s" if fmt == 0 else ".d")
    return Instr(name, rd=rd, rs1=rs1, rs2=rs2, rs3=w >> 27, rm=f3, raw=w)


def _dec_opfp(w, rd, f3, rs1, rs2, f7):
    fmt = f7 & 3
    if fmt > 1:
        return _illegal(w)
    s = ".s" if fmt == 0 else ".d"
    group = f7 >> 2
    if group == 0x00:
        return Instr("fadd" + s, rd=rd, rs1=rs1, rs2=rs2, rm=f3, raw=w)
    if group == 0x01:
        return Instr("fsub" + s, rd=rd, rs1=rs1, rs2=rs2, rm=f3, raw=w)
    if group == 0x02:
        return Instr("fmul" + s, rd=rd, rs1=rs1, rs2=rs2, rm=f3, raw=w)
    if group == 0x03:
        return Instr("fdiv" + s, rd=rd, rs1=rs1, rs2=rs2, rm=f3, raw=w)
    if group == 0x0B:
        if rs2 != 0:
            return _illegal(w)
        return Instr("fsqrt" + s, rd=rd, rs1=rs1, rm=f3, raw=w)
    if group == 0x04:
        if f3 == 0:
            return Instr("fsgnj" + s, rd=rd, rs1=rs1, rs2=rs2, raw=w)
        if f3 == 1:
            return Instr("fsgnjn" + s, rd=rd, rs1=rs1, rs2=rs2, raw=w)
        if f3 == 2:
            return Instr("fsgnjx" + s, rd=rd, rs1=rs1, rs2=rs2, raw=w)
        return _illegal(w)
    if group == 0x05:
        if f3 == 0:
            return Instr("fmin" + s, rd=rd, rs1=rs1, rs2=rs2, raw=w)
        if f3 == 1:
            return Instr("fmax" + s, rd=rd, rs1=rs1, rs2=rs2, raw=w)
        return _illegal(w)
    if group == 0x08:
        # fcvt.s.d / fcvt.d.s: rs2 encodes the source format
        if fmt == 0 and rs2 == 1:
            return Instr("fcvt.s.d", rd=rd, rs1=rs1, rm=f3, raw=w)
        if fmt == 1 and rs2 == 0:
            return Instr("fcvt.d.s", rd=rd, rs1=rs1, rm=f3, raw=w)
        return _illegal(w)
    if group == 0x14:
        if f3 == 0:
            return Instr("fle" + s, rd=rd, rs1=rs1, rs2=rs2, raw=w)
        if f3 == 1:
            return Instr("flt" + s, rd=rd, rs1=rs1, rs2=rs2, raw=w)
        if f3 == 2:
            return Instr("feq" + s, rd=rd, rs1=rs1, rs2=rs2, raw=w)
        return _illegal(w)
    if group == 0x18:
        names = {0: "fcvt.w", 1: "fcvt.wu", 2: "fcvt.l", 3: "fcvt.lu"}
        if rs2 not in names:
            return _illegal(w)
        return Instr(names[rs2] + s, rd=rd, rs1=rs1, rm=f3, raw=w)
    if group == 0x1A:
        names = {0: ".w", 1: ".wu", 2: ".l", 3: ".lu"}
        if rs2 not in names:
            return _illegal(w)
        return Instr("fcvt" + s + names[rs2], rd=rd, rs1=rs1, rm=f3, raw=w)
    if group == 0x1C:
        if rs2 != 0:
            return _illegal(w)
        if f3 == 0:
            return Instr("fmv.x.w" if fmt == 0 else "fmv.x.d", rd=rd, rs1=rs1, raw=w)
        if f3 == 1:
            return Instr("fclass" + s, rd=rd, rs1=rs1, raw=w)
        return _illegal(w)
    if group == 0x1E:
        if rs2 != 0 or f3 != 0:
            return _illegal(w)
        return Instr("fmv.w.x" if fmt == 0 else "fmv.d.x", rd=rd, rs1=rs1, raw=w)
    return _illegal(w)


_OPCODE32 = {
    0x37: _dec_lui, 0x17: _dec_auipc, 0x6F: _dec_jal, 0x67: _dec_jalr,
    0x63: _dec_branch, 0x03: _dec_load, 0x23: _dec_store,
    0x13: _dec_opimm, 0x1B: _dec_opimm32, 0x33: _dec_op, 0x3B: _dec_op32,
    0x0F: _dec_miscmem, 0x73: _dec_system, 0x2F: _dec_amo,
    0x07: _dec_loadfp, 0x27: _dec_storefp,
    0x43: _dec_fma, 0x47: _dec_fma, 0x4B: _dec_fma, 0x4F: _dec_fma,
    0x53: _dec_opfp,
}


# --------------------------------------------------------------- 16-bit part

def _decode16(h: int) -> Instr:
    if h == 0:
        return _illegal(h, size=2)
    quad = h & 3
    f3 = (h >> 13) & 7
    if quad == 0:
        return _dec_c0(h, f3)
    if quad == 1:
        return _dec_c1(h, f3)
    return _dec_c2(h, f3)


def _rc(h: int, pos: int) -> int:
    """3-bit compressed register field at bit pos, mapping to x8..x15."""
    return ((h >> pos) & 7) + 8


def _fin(instr: Instr, raw: int) -> Instr:
    instr.size = 2
    instr.raw = raw
    return instr


def _dec_c0(h: int, f3: int) -> Instr:
    if f3 == 0:
        # c.addi4spn
        u = (((h >> 11) & 3) << 4) | (((h >> 7) & 0xF) << 6) \
            | (((h >> 6) & 1) << 2) | (((h >> 5) & 1) << 3)
        if u == 0:
            return _illegal(h, 2)
        return _fin(Instr("addi", rd=_rc(h, 2), rs1=2, imm=u), h)
    if f3 == 1:
        u = (((h >> 10) & 7) << 3) | (((h >> 5) & 3) << 6)
        return _fin(Instr("fld", rd=_rc(h, 2), rs1=_rc(h, 7), imm=u), h)
    if f3 == 2:
        u = (((h >> 10) & 7) << 3) | (((h >> 6) & 1) << 2) | (((h >> 5) & 1) << 6)
        return _fin(Instr("lw", rd=_rc(h, 2), rs1=_rc(h, 7), imm=u), h)
    if f3 == 3:
        u = (((h >> 10) & 7) << 3) | (((h >> 5) & 3) << 6)
        return _fin(Instr("ld", rd=_rc(h, 2), rs1=_rc(h, 7), imm=u), h)
    if f3 == 5:
        u = (((h >> 10) & 7) << 3) | (((h >> 5) & 3) << 6)
        return _fin(Instr("fsd", rs1=_rc(h, 7), rs2=_rc(h, 2), imm=u), h)
    if f3 == 6:
        u = (((h >> 10) & 7) << 3) | (((h >> 6) & 1) << 2) | (((h >> 5) & 1) << 6)
        return _fin(Instr("sw", rs1=_rc(h, 7), rs2=_rc(h, 2), imm=u), h)
    if f3 == 7:
        u = (((h >> 10) & 7) << 3) | (((h >> 5) & 3) << 6)
        return _fin(Instr("sd", rs1=_rc(h, 7), rs2=_rc(h, 2), imm=u), h)
    return _illegal(h, 2)


def _imm_ci(h: int) -> int:
    return _sx((((h >> 12) & 1) << 5) | ((h >> 2) & 31), 6)


def _dec_c1(h: int, f3: int) -> Instr:
    rd = (h >> 7) & 31
    if f3 == 0:
        # c.nop / c.addi (imm may be 0: HINT, still executes as addi)
        return _fin(Instr("addi", rd=rd, rs1=rd, imm=_imm_ci(h)), h)
    if f3 == 1:
        if rd == 0:
            return _illegal(h, 2)
        return _fin(Instr("addiw", rd=rd, rs1=rd, imm=_imm_ci(h)), h)
    if f3 == 2:
        return _fin(Instr("addi", rd=rd, rs1=0, imm=_imm_ci(h)), h)
    if f3 == 3:
        if rd == 2:
            imm = _sx(
                (((h >> 12) & 1) << 9) | (((h >> 6) & 1) << 4)
                | (((h >> 5) & 1) << 6) | (((h >> 3) & 3) << 7)
                | (((h >> 2) & 1) << 5), 10)
            if imm == 0:
                return _illegal(h, 2)
            return _fin(Instr("addi", rd=2, rs1=2, imm=imm), h)
        imm = _sx((((h >> 12) & 1) << 17) | (((h >> 2) & 31) << 12), 18)
        if imm == 0:
            return _illegal(h, 2)
        return _fin(Instr("lui", rd=rd, imm=imm), h)
    if f3 == 4:
        sub = (h >> 10) & 3
        rdp = _rc(h, 7)
        if sub == 0 or sub == 1:
            shamt = (((h >> 12) & 1) << 5) | ((h >> 2) & 31)
            return _fin(Instr("srli" if sub == 0 else "srai", rd=rdp, rs1=rdp, imm=shamt), h)
        if sub == 2:
            return _fin(Instr("andi", rd=rdp, rs1=rdp, imm=_imm_ci(h)), h)
        rs2p = _rc(h, 2)
        hi = (h >> 12) & 1
        low = (h >> 5) & 3
        if hi == 0:
            ops = {0: "sub", 1: "xor", 2: "or", 3: "and"}
        else:
            ops = {0: "subw", 1: "addw"}
            if low not in ops:
                return _illegal(h, 2)
        return _fin(Instr(ops[low], rd=rdp, rs1=rdp, rs2=rs2p), h)
    if f3 == 5:
        imm = _sx(
            (((h >> 12) & 1) << 11) | (((h >> 11) & 1) << 4)
            | (((h >> 9) & 3) << 8) | (((h >> 8) & 1) << 10)
            | (((h >> 7) & 1) << 6) | (((h >> 6) & 1) << 7)
            | (((h >> 3) & 7) << 1) | (((h >> 2) & 1) << 5), 12)
        return _fin(Instr("jal", rd=0, imm=imm), h)
    # c.beqz / c.bnez
    imm = _sx(
        (((h >> 12) & 1) << 8) | (((h >> 10) & 3) << 3)
        | (((h >> 5) & 3) << 6) | (((h >> 3) & 3) << 1)
        | (((h >> 2) & 1) << 5), 9)
    op = "beq" if f3 == 6 else "bne"
    return _fin(Instr(op, rs1=_rc(h, 7), rs2=0, imm=imm), h)


def _dec_c2(h: int, f3: int) -> Instr:
    rd = (h >> 7) & 31
    rs2 = (h >> 2) & 31
    if f3 == 0:
        shamt = (((h >> 12) & 1) << 5) | rs2
        return _fin(Instr("slli", rd=rd, rs1=rd, imm=shamt), h)
    if f3 == 1:
        u = (((h >> 12) & 1) << 5) | (((h >> 5) & 3) << 3) | (((h >> 2) & 7) << 6)
        return _fin(Instr("fld", rd=rd, rs1=2, imm=u), h)
    if f3 == 2:
        if rd == 0:
            return _illegal(h, 2)
        u = (((h >> 12) & 1) << 5) | (((h >> 4) & 7) << 2) | (((h >> 2) & 3) << 6)
        return _fin(Instr("lw", rd=rd, rs1=2, imm=u), h)
    if f3 == 3:
        if rd == 0:
            return _illegal(h, 2)
        u = (((h >> 12) & 1) << 5) | (((h >> 5) & 3) << 3) | (((h >> 2) & 7) << 6)
        return _fin(Instr("ld", rd=rd, rs1=2, imm=u), h)
    if f3 == 4:
        hi = (h >> 12) & 1
        if hi == 0:
            if rs2 == 0:
                if rd == 0:
                    return _illegal(h, 2)
                return _fin(Instr("jalr", rd=0, rs1=rd, imm=0), h)
            return _fin(Instr("add", rd=rd, rs1=0, rs2=rs2), h)
        if rs2 == 0:
            if rd == 0:
                return _fin(Instr("ebreak"), h)
            return _fin(Instr("jalr", rd=1, rs1=rd, imm=0), h)
        return _fin(Instr("add", rd=rd, rs1=rd, rs2=rs2), h)
    if f3 == 5:
        u = (((h >> 10) & 7) << 3) | (((h >> 7) & 7) << 6)
        return _fin(Instr("fsd", rs1=2, rs2=rs2, imm=u), h)
    if f3 == 6:
        u = (((h >> 9) & 0xF) << 2) | (((h >> 7) & 3) << 6)
        return _fin(Instr("sw", rs1=2, rs2=rs2, imm=u), h)
    u = (((h >> 10) & 7) << 3) | (((h >> 7) & 7) << 6)
    return _fin(Instr("sd", rs1=2, rs2=rs2, imm=u), h)
