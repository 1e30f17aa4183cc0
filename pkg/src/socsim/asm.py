"""Two-pass RV64 assembler and matching disassembler.

The assembler accepts GNU-as-flavored source: one instruction or directive
per line, `#` comments, `label:` definitions, and `label+const` /
`label-const` operand expressions. It emits only 32-bit encodings.

Supported directives: .word, .dword, .byte, .ascii, .align (power of two),
.org. Supported pseudo-instructions: li, la, mv, ret, call, j, nop and the
branch aliases bgt, ble, bgtu, bleu, beqz, bnez, bltz, bgez, blez, bgtz.

disassemble() prints one line per instruction using the same mnemonics and
operand syntax the assembler accepts; bytes that do not decode come out as
.word / .byte directives, so its output always reassembles.
"""

from __future__ import annotations

import re

from .cpu.decode import decode

__all__ = ["AsmError", "assemble", "disassemble", "format_symbols"]


class AsmError(ValueError):
    def __init__(self, line_no: int, msg: str):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


# ------------------------------------------------------------------ operands

_X_ABI = (
    "zero ra sp gp tp t0 t1 t2 s0 s1 a0 a1 a2 a3 a4 a5 a6 a7 "
    "s2 s3 s4 s5 s6 s7 s8 s9 s10 s11 t3 t4 t5 t6"
).split()

XREGS = {f"x{i}": i for i in range(32)}
XREGS.update({name: i for i, name in enumerate(_X_ABI)})
XREGS["fp"] = 8

_F_ABI = (
    "ft0 ft1 ft2 ft3 ft4 ft5 ft6 ft7 fs0 fs1 fa0 fa1 fa2 fa3 fa4 fa5 fa6 fa7 "
    "fs2 fs3 fs4 fs5 fs6 fs7 fs8 fs9 fs10 fs11 ft8 ft9 ft10 ft11"
).split()

FREGS = {f"f{i}": i for i in range(32)}
FREGS.update({name: i for i, name in enumerate(_F_ABI)})

CSRS = {
    "fflags": 0x001, "frm": 0x002, "fcsr": 0x003,
    "sstatus": 0x100, "sie": 0x104, "stvec": 0x105, "scounteren": 0x106,
    "sscratch": 0x140, "sepc": 0x141, "scause": 0x142, "stval": 0x143,
    "sip": 0x144, "satp": 0x180,
    "mstatus": 0x300, "misa": 0x301, "medeleg": 0x302, "mideleg": 0x303,
    "mie": 0x304, "mtvec": 0x305, "mcounteren": 0x306, "mscratch": 0x340,
    "mepc": 0x341, "mcause": 0x342, "mtval": 0x343, "mip": 0x344,
    "mcycle": 0xB00, "minstret": 0xB02,
    "cycle": 0xC00, "time": 0xC01, "instret": 0xC02,
    "mvendorid": 0xF11, "marchid": 0xF12, "mimpid": 0xF13, "mhartid": 0xF14,
}
_CSR_NAMES = {num: name for name, num in CSRS.items()}

RM_NAMES = {"rne": 0, "rtz": 1, "rdn": 2, "rup": 3, "rmm": 4, "dyn": 7}
_RM_BY_NUM = {num: name for name, num in RM_NAMES.items()}

_FENCE_BITS = {"i": 8, "o": 4, "r": 2, "w": 1}


# ------------------------------------------------------------------ encoders

def _enc_r(opc, f3, f7, rd, rs1, rs2):
    return opc | (rd << 7) | (f3 << 12) | (rs1 << 15) | (rs2 << 20) | (f7 << 25)


def _enc_i(opc, f3, rd, rs1, imm):
    return opc | (rd << 7) | (f3 << 12) | (rs1 << 15) | ((imm & 0xFFF) << 20)


def _enc_s(opc, f3, rs1, rs2, imm):
    imm &= 0xFFF
    return opc | ((imm & 31) << 7) | (f3 << 12) | (rs1 << 15) | (rs2 << 20) \
        | ((imm >> 5) << 25)


def _enc_b(opc, f3, rs1, rs2, imm):
    imm &= 0x1FFF
    return opc | (((imm >> 11) & 1) << 7) | (((imm >> 1) & 0xF) << 8) \
        | (f3 << 12) | (rs1 << 15) | (rs2 << 20) \
        | (((imm >> 5) & 0x3F) << 25) | (((imm >> 12) & 1) << 31)


def _enc_u(opc, rd, imm20):
    return opc | (rd << 7) | ((imm20 & 0xFFFFF) << 12)


def _enc_j(rd, imm):
    imm &= 0x1FFFFF
    return 0x6F | (rd << 7) | (((imm >> 12) & 0xFF) << 12) \
        | (((imm >> 11) & 1) << 20) | (((imm >> 1) & 0x3FF) << 21) \
        | (((imm >> 20) & 1) << 31)


# ---------------------------------------------------------- instruction table
# op -> (format, encoding parameters)

INSTRS = {
    "lui": ("u", 0x37), "auipc": ("u", 0x17),
    "jal": ("jal",), "jalr": ("jalr",),
    "beq": ("br", 0), "bne": ("br", 1), "blt": ("br", 4),
    "bge": ("br", 5), "bltu": ("br", 6), "bgeu": ("br", 7),
    "lb": ("ld", 0), "lh": ("ld", 1), "lw": ("ld", 2), "ld": ("ld", 3),
    "lbu": ("ld", 4), "lhu": ("ld", 5), "lwu": ("ld", 6),
    "sb": ("st", 0), "sh": ("st", 1), "sw": ("st", 2), "sd": ("st", 3),
    "addi": ("i", 0x13, 0), "slti": ("i", 0x13, 2), "sltiu": ("i", 0x13, 3),
    "xori": ("i", 0x13, 4), "ori": ("i", 0x13, 6), "andi": ("i", 0x13, 7),
    "addiw": ("i", 0x1B, 0),
    "slli": ("ish", 1, 0x00), "srli": ("ish", 5, 0x00), "srai": ("ish", 5, 0x10),
    "slliw": ("ishw", 1, 0x00), "srliw": ("ishw", 5, 0x00), "sraiw": ("ishw", 5, 0x20),
    "add": ("r", 0x33, 0, 0x00), "sub": ("r", 0x33, 0, 0x20),
    "sll": ("r", 0x33, 1, 0x00), "slt": ("r", 0x33, 2, 0x00),
    "sltu": ("r", 0x33, 3, 0x00), "xor": ("r", 0x33, 4, 0x00),
    "srl": ("r", 0x33, 5, 0x00), "sra": ("r", 0x33, 5, 0x20),
    "or": ("r", 0x33, 6, 0x00), "and": ("r", 0x33, 7, 0x00),
    "mul": ("r", 0x33, 0, 1), "mulh": ("r", 0x33, 1, 1),
    "mulhsu": ("r", 0x33, 2, 1), "mulhu": ("r", 0x33, 3, 1),
    "div": ("r", 0x33, 4, 1), "divu": ("r", 0x33, 5, 1),
    "rem": ("r", 0x33, 6, 1), "remu": ("r", 0x33, 7, 1),
    "addw": ("r", 0x3B, 0, 0x00), "subw": ("r", 0x3B, 0, 0x20),
    "sllw": ("r", 0x3B, 1, 0x00), "srlw": ("r", 0x3B, 5, 0x00),
    "sraw": ("r", 0x3B, 5, 0x20),
    "mulw": ("r", 0x3B, 0, 1), "divw": ("r", 0x3B, 4, 1),
    "divuw": ("r", 0x3B, 5, 1), "remw": ("r", 0x3B, 6, 1),
    "remuw": ("r", 0x3B, 7, 1),
    "fence": ("fence",), "fence.i": ("fixed", 0x0000100F),
    "ecall": ("fixed", 0x00000073), "ebreak": ("fixed", 0x00100073),
    "mret": ("fixed", 0x30200073), "sret": ("fixed", 0x10200073),
    "wfi": ("fixed", 0x10500073), "sfence.vma": ("sfence",),
    "csrrw": ("csr", 1), "csrrs": ("csr", 2), "csrrc": ("csr", 3),
    "csrrwi": ("csri", 5), "csrrsi": ("csri", 6), "csrrci": ("csri", 7),
}

for _suffix, _f3 in ((".w", 2), (".d", 3)):
    INSTRS["lr" + _suffix] = ("lr", _f3)
    for _name, _f5 in (
        ("sc", 0x03), ("amoswap", 0x01), ("amoadd", 0x00), ("amoxor", 0x04),
        ("amoand", 0x0C), ("amoor", 0x08), ("amomin", 0x10), ("amomax", 0x14),
        ("amominu", 0x18), ("amomaxu", 0x1C),
    ):
        INSTRS[_name + _suffix] = ("amo", _f3, _f5)

INSTRS.update({
    "flw": ("fload", 2), "fld": ("fload", 3),
    "fsw": ("fstore", 2), "fsd": ("fstore", 3),
})

for _suffix, _fmt in ((".s", 0), (".d", 1)):
    INSTRS["fmadd" + _suffix] = ("fma", 0x43, _fmt)
    INSTRS["fmsub" + _suffix] = ("fma", 0x47, _fmt)
    INSTRS["fnmsub" + _suffix] = ("fma", 0x4B, _fmt)
    INSTRS["fnmadd" + _suffix] = ("fma", 0x4F, _fmt)
    INSTRS["fadd" + _suffix] = ("frm", _fmt, 0x00)
    INSTRS["fsub" + _suffix] = ("frm", _fmt, 0x01)
    INSTRS["fmul" + _suffix] = ("frm", _fmt, 0x02)
    INSTRS["fdiv" + _suffix] = ("frm", _fmt, 0x03)
    INSTRS["fsqrt" + _suffix] = ("fsqrt", _fmt)
    INSTRS["fsgnj" + _suffix] = ("fr", _fmt, 0x04, 0)
    INSTRS["fsgnjn" + _suffix] = ("fr", _fmt, 0x04, 1)
    INSTRS["fsgnjx" + _suffix] = ("fr", _fmt, 0x04, 2)
    INSTRS["fmin" + _suffix] = ("fr", _fmt, 0x05, 0)
    INSTRS["fmax" + _suffix] = ("fr", _fmt, 0x05, 1)
    INSTRS["fle" + _suffix] = ("fcmp", _fmt, 0)
    INSTRS["flt" + _suffix] = ("fcmp", _fmt, 1)
    INSTRS["feq" + _suffix] = ("fcmp", _fmt, 2)
    INSTRS["fclass" + _suffix] = ("fclass", _fmt)
    for _code, _int in ((0, ".w"), (1, ".wu"), (2, ".l"), (3, ".lu")):
        INSTRS[f"fcvt{_int}{_suffix}"] = ("fcvti", _fmt, _code)
        INSTRS[f"fcvt{_suffix}{_int}"] = ("fcvtf", _fmt, _code)

INSTRS.update({
    "fcvt.s.d": ("fcvtff", 0, 1), "fcvt.d.s": ("fcvtff", 1, 0),
    "fmv.x.w": ("fmvx", 0), "fmv.x.d": ("fmvx", 1),
    "fmv.w.x": ("fmvf", 0), "fmv.d.x": ("fmvf", 1),
})

PSEUDOS = frozenset([
    "li", "la", "mv", "ret", "call", "j", "nop",
    "bgt", "ble", "bgtu", "bleu",
    "beqz", "bnez", "bltz", "bgez", "blez", "bgtz",
    "csrr", "csrw", "csrs", "csrc", "fmv.d", "fmv.s", "fneg.d", "fneg.s",
    "fabs.d", "fabs.s", "not", "neg", "negw", "seqz", "snez", "sltz", "sgtz",
])


# ------------------------------------------------------------------- parsing

_LABEL_RE = re.compile(r"^([A-Za-z_.$][\w.$]*)\s*:\s*(.*)$")
_MEM_RE = re.compile(r"^(.*?)\(\s*([\w.$]+)\s*\)$")
_EXPR_RE = re.compile(r"^([A-Za-z_.$][\w.$]*)\s*([+-])\s*(\S+)$")


def _strip_comment(line: str) -> str:
    out = []
    in_str = False
    i = 0
    while i < len(line):
        ch = line[i]
        if in_str:
            if ch == "\\" and i + 1 < len(line):
                out.append(line[i:i + 2])
                i += 2
                continue
            if ch == '"':
                in_str = False
        elif ch == '"':
            in_str = True
        elif ch == "#":
            break
        out.append(ch)
        i += 1
    return "".join(out).strip()


def _parse_int(tok: str, ln: int) -> int:
    try:
        return int(tok, 0)
    except ValueError:
        raise AsmError(ln, f"bad integer {tok!r}") from None


class _Line:
    __slots__ = ("no", "kind", "op", "args", "addr", "size")

    def __init__(self, no, kind, op, args):
        self.no = no
        self.kind = kind  # "instr", "pseudo", or directive name
        self.op = op
        self.args = args
        self.addr = 0
        self.size = 0


def _split_operands(rest: str) -> list:
    rest = rest.strip()
    if not rest:
        return []
    return [p.strip() for p in rest.split(",")]


class _Asm:
    def __init__(self, base: int):
        self.base = base
        self.symbols: dict = {}

    # -- expressions

    def _eval(self, tok: str, ln: int) -> int:
        tok = tok.strip()
        m = _EXPR_RE.match(tok)
        if m and m.group(1) in self.symbols:
            off = _parse_int(m.group(3), ln)
            return self.symbols[m.group(1)] + (off if m.group(2) == "+" else -off)
        if tok in self.symbols:
            return self.symbols[tok]
        if re.match(r"^[A-Za-z_.$][\w.$]*$", tok) and not re.match(r"^-?\d|^0[xXbB]", tok):
            raise AsmError(ln, f"undefined symbol {tok!r}")
        return _parse_int(tok, ln)

    def _xreg(self, tok: str, ln: int) -> int:
        r = XREGS.get(tok.strip())
        if r is None:
            raise AsmError(ln, f"bad register {tok!r}")
        return r

    def _freg(self, tok: str, ln: int) -> int:
        r = FREGS.get(tok.strip())
        if r is None:
            raise AsmError(ln, f"bad fp register {tok!r}")
        return r

    def _mem(self, tok: str, ln: int):
        m = _MEM_RE.match(tok.strip())
        if not m:
            raise AsmError(ln, f"expected off(reg), got {tok!r}")
        off = self._eval(m.group(1), ln) if m.group(1).strip() else 0
        return off, self._xreg(m.group(2), ln)

    def _csr(self, tok: str, ln: int) -> int:
        tok = tok.strip()
        if tok in CSRS:
            return CSRS[tok]
        val = _parse_int(tok, ln)
        if not 0 <= val < 4096:
            raise AsmError(ln, f"csr number out of range: {tok}")
        return val

    def _rm(self, tok: str, ln: int) -> int:
        rm = RM_NAMES.get(tok.strip())
        if rm is None:
            raise AsmError(ln, f"bad rounding mode {tok!r}")
        return rm

    def _check_imm(self, val: int, bits: int, ln: int, what: str = "immediate"):
        if not -(1 << (bits - 1)) <= val < (1 << (bits - 1)):
            raise AsmError(ln, f"{what} {val} does not fit in {bits} bits")
        return val

    def _rel(self, target_tok: str, pc: int, bits: int, ln: int) -> int:
        target = self._eval(target_tok, ln)
        off = target - pc
        if off & 1:
            raise AsmError(ln, f"misaligned branch target {target:#x}")
        limit = 1 << (bits - 1)
        if not -limit <= off < limit:
            raise AsmError(ln, f"branch target {target:#x} out of range ({off:+#x})")
        return off

    # -- instruction encoding (operands -> one 32-bit word)

    def encode(self, op: str, operands: list, pc: int, ln: int) -> int:
        spec = INSTRS[op]
        fmt = spec[0]

        def need(n):
            if len(operands) != n:
                raise AsmError(ln, f"{op} expects {n} operands, got {len(operands)}")

        if fmt == "r":
            need(3)
            return _enc_r(spec[1], spec[2], spec[3], self._xreg(operands[0], ln),
                          self._xreg(operands[1], ln), self._xreg(operands[2], ln))
        if fmt == "i":
            need(3)
            imm = self._check_imm(self._eval(operands[2], ln), 12, ln)
            return _enc_i(spec[1], spec[2], self._xreg(operands[0], ln),
                          self._xreg(operands[1], ln), imm)
        if fmt == "ish":
            need(3)
            sh = self._eval(operands[2], ln)
            if not 0 <= sh < 64:
                raise AsmError(ln, f"shift amount {sh} out of range")
            return _enc_i(0x13, spec[1], self._xreg(operands[0], ln),
                          self._xreg(operands[1], ln), (spec[2] << 6) | sh)
        if fmt == "ishw":
            need(3)
            sh = self._eval(operands[2], ln)
            if not 0 <= sh < 32:
                raise AsmError(ln, f"shift amount {sh} out of range")
            return _enc_i(0x1B, spec[1], self._xreg(operands[0], ln),
                          self._xreg(operands[1], ln), (spec[2] << 5) | sh)
        if fmt == "ld":
            need(2)
            off, rs1 = self._mem(operands[1], ln)
            self._check_imm(off, 12, ln, "offset")
            return _enc_i(0x03, spec[1], self._xreg(operands[0], ln), rs1, off)
        if fmt == "st":
            need(2)
            off, rs1 = self._mem(operands[1], ln)
            self._check_imm(off, 12, ln, "offset")
            return _enc_s(0x23, spec[1], rs1, self._xreg(operands[0], ln), off)
        if fmt == "br":
            need(3)
            off = self._rel(operands[2], pc, 13, ln)
            return _enc_b(0x63, spec[1], self._xreg(operands[0], ln),
                          self._xreg(operands[1], ln), off)
        if fmt == "u":
            need(2)
            imm = self._eval(operands[1], ln)
            if not -(1 << 19) <= imm < (1 << 20):
                raise AsmError(ln, f"20-bit immediate out of range: {imm}")
            return _enc_u(spec[1], self._xreg(operands[0], ln), imm)
        if fmt == "jal":
            if len(operands) == 1:
                rd, target = 1, operands[0]
            elif len(operands) == 2:
                rd, target = self._xreg(operands[0], ln), operands[1]
            else:
                raise AsmError(ln, "jal expects 1 or 2 operands")
            return _enc_j(rd, self._rel(target, pc, 21, ln))
        if fmt == "jalr":
            if len(operands) == 1:
                return _enc_i(0x67, 0, 1, self._xreg(operands[0], ln), 0)
            if len(operands) == 2:
                off, rs1 = self._mem(operands[1], ln)
                self._check_imm(off, 12, ln, "offset")
                return _enc_i(0x67, 0, self._xreg(operands[0], ln), rs1, off)
            if len(operands) == 3:
                imm = self._check_imm(self._eval(operands[2], ln), 12, ln)
                return _enc_i(0x67, 0, self._xreg(operands[0], ln),
                              self._xreg(operands[1], ln), imm)
            raise AsmError(ln, "jalr expects 1, 2 or 3 operands")
        if fmt == "fence":
            if not operands:
                return _enc_i(0x0F, 0, 0, 0, 0x0FF)
            need(2)
            pred = succ = 0
            for ch in operands[0]:
                pred |= _FENCE_BITS.get(ch, 0)
            for ch in operands[1]:
                succ |= _FENCE_BITS.get(ch, 0)
            return _enc_i(0x0F, 0, 0, 0, (pred << 4) | succ)
        if fmt == "fixed":
            need(0)
            return spec[1]
        if fmt == "sfence":
            rs1 = self._xreg(operands[0], ln) if len(operands) >= 1 else 0
            rs2 = self._xreg(operands[1], ln) if len(operands) >= 2 else 0
            if len(operands) > 2:
                raise AsmError(ln, "sfence.vma expects at most 2 operands")
            return _enc_r(0x73, 0, 0x09, 0, rs1, rs2)
        if fmt == "csr":
            need(3)
            return _enc_i(0x73, spec[1], self._xreg(operands[0], ln),
                          self._xreg(operands[2], ln), self._csr(operands[1], ln))
        if fmt == "csri":
            need(3)
            zimm = self._eval(operands[2], ln)
            if not 0 <= zimm < 32:
                raise AsmError(ln, f"csr immediate {zimm} out of range")
            return _enc_i(0x73, spec[1], self._xreg(operands[0], ln),
                          zimm, self._csr(operands[1], ln))
        if fmt == "lr":
            need(2)
            _, rs1 = self._mem(operands[1], ln)
            return _enc_r(0x2F, spec[1], 0x02 << 2, self._xreg(operands[0], ln), rs1, 0)
        if fmt == "amo":
            need(3)
            _, rs1 = self._mem(operands[2], ln)
            return _enc_r(0x2F, spec[1], spec[2] << 2, self._xreg(operands[0], ln),
                          rs1, self._xreg(operands[1], ln))
        if fmt == "fload":
            need(2)
            off, rs1 = self._mem(operands[1], ln)
            self._check_imm(off, 12, ln, "offset")
            return _enc_i(0x07, spec[1], self._freg(operands[0], ln), rs1, off)
        if fmt == "fstore":
            need(2)
            off, rs1 = self._mem(operands[1], ln)
            self._check_imm(off, 12, ln, "offset")
            return _enc_s(0x27, spec[1], rs1, self._freg(operands[0], ln), off)
        if fmt == "fma":
            if len(operands) == 5:
                rm = self._rm(operands[4], ln)
            elif len(operands) == 4:
                rm = 7
            else:
                raise AsmError(ln, f"{op} expects 4 or 5 operands")
            word = _enc_r(spec[1], rm, spec[2], self._freg(operands[0], ln),
                          self._freg(operands[1], ln), self._freg(operands[2], ln))
            return word | (self._freg(operands[3], ln) << 27)
        if fmt == "frm":
            if len(operands) == 4:
                rm = self._rm(operands[3], ln)
            elif len(operands) == 3:
                rm = 7
            else:
                raise AsmError(ln, f"{op} expects 3 or 4 operands")
            return _enc_r(0x53, rm, (spec[2] << 2) | spec[1],
                          self._freg(operands[0], ln),
                          self._freg(operands[1], ln), self._freg(operands[2], ln))
        if fmt == "fsqrt":
            if len(operands) == 3:
                rm = self._rm(operands[2], ln)
            elif len(operands) == 2:
                rm = 7
            else:
                raise AsmError(ln, f"{op} expects 2 or 3 operands")
            return _enc_r(0x53, rm, (0x0B << 2) | spec[1],
                          self._freg(operands[0], ln), self._freg(operands[1], ln), 0)
        if fmt == "fr":
            need(3)
            return _enc_r(0x53, spec[3], (spec[2] << 2) | spec[1],
                          self._freg(operands[0], ln),
                          self._freg(operands[1], ln), self._freg(operands[2], ln))
        if fmt == "fcmp":
            need(3)
            return _enc_r(0x53, spec[2], (0x14 << 2) | spec[1],
                          self._xreg(operands[0], ln),
                          self._freg(operands[1], ln), self._freg(operands[2], ln))
        if fmt == "fclass":
            need(2)
            return _enc_r(0x53, 1, (0x1C << 2) | spec[1],
                          self._xreg(operands[0], ln), self._freg(operands[1], ln), 0)
        if fmt == "fcvti":
            if len(operands) == 3:
                rm = self._rm(operands[2], ln)
            elif len(operands) == 2:
                rm = 7
            else:
                raise AsmError(ln, f"{op} expects 2 or 3 operands")
            return _enc_r(0x53, rm, (0x18 << 2) | spec[1],
                          self._xreg(operands[0], ln),
                          self._freg(operands[1], ln), spec[2])
        if fmt == "fcvtf":
            if len(operands) == 3:
                rm = self._rm(operands[2], ln)
            elif len(operands) == 2:
                rm = 7
            else:
                raise AsmError(ln, f"{op} expects 2 or 3 operands")
            return _enc_r(0x53, rm, (0x1A << 2) | spec[1],
                          self._freg(operands[0], ln),
                          self._xreg(operands[1], ln), spec[2])
        if fmt == "fcvtff":
            if len(operands) == 3:
                rm = self._rm(operands[2], ln)
            elif len(operands) == 2:
                rm = 7
            else:
                raise AsmError(ln, f"{op} expects 2 or 3 operands")
            return _enc_r(0x53, rm, (0x08 << 2) | spec[1],
                          self._freg(operands[0], ln),
                          self._freg(operands[1], ln), spec[2])
        if fmt == "fmvx":
            need(2)
            return _enc_r(0x53, 0, (0x1C << 2) | spec[1],
                          self._xreg(operands[0], ln), self._freg(operands[1], ln), 0)
        if fmt == "fmvf":
            need(2)
            return _enc_r(0x53, 0, (0x1E << 2) | spec[1],
                          self._freg(operands[0], ln), self._xreg(operands[1], ln), 0)
        raise AsmError(ln, f"unhandled format {fmt} for {op}")

    # -- pseudo expansion (list of (op, operand-list) using real mnemonics)

    def expand_pseudo(self, op: str, operands: list, ln: int) -> list:
        def need(n):
            if len(operands) != n:
                raise AsmError(ln, f"{op} expects {n} operands, got {len(operands)}")

        if op == "nop":
            need(0)
            return [("addi", ["x0", "x0", "0"])]
        if op == "mv":
            need(2)
            return [("addi", [operands[0], operands[1], "0"])]
        if op == "ret":
            need(0)
            return [("jalr", ["x0", "0(x1)"])]
        if op == "j":
            need(1)
            return [("jal", ["x0", operands[0]])]
        if op == "li":
            need(2)
            value = self._eval_const(operands[1], ln)
            return _li_sequence(operands[0], value, ln)
        if op in ("la", "call"):
            need(2 if op == "la" else 1)
            # expanded later, per-address: auipc+jalr / auipc+addi
            return [(op, operands)]
        if op in ("bgt", "ble", "bgtu", "bleu"):
            need(3)
            real = {"bgt": "blt", "ble": "bge", "bgtu": "bltu", "bleu": "bgeu"}[op]
            return [(real, [operands[1], operands[0], operands[2]])]
        if op in ("beqz", "bnez"):
            need(2)
            return [({"beqz": "beq", "bnez": "bne"}[op],
                     [operands[0], "x0", operands[1]])]
        if op in ("bltz", "bgez"):
            need(2)
            return [({"bltz": "blt", "bgez": "bge"}[op],
                     [operands[0], "x0", operands[1]])]
        if op in ("bgtz", "blez"):
            need(2)
            return [({"bgtz": "blt", "blez": "bge"}[op],
                     ["x0", operands[0], operands[1]])]
        if op == "csrr":
            need(2)
            return [("csrrs", [operands[0], operands[1], "x0"])]
        if op in ("csrw", "csrs", "csrc"):
            need(2)
            real = {"csrw": "csrrw", "csrs": "csrrs", "csrc": "csrrc"}[op]
            return [(real, ["x0", operands[0], operands[1]])]
        if op in ("fmv.d", "fmv.s", "fneg.d", "fneg.s", "fabs.d", "fabs.s"):
            need(2)
            kind, fmt = op.split(".")
            real = {"fmv": "fsgnj.", "fneg": "fsgnjn.", "fabs": "fsgnjx."}[kind] + fmt
            return [(real, [operands[0], operands[1], operands[1]])]
        if op == "not":
            need(2)
            return [("xori", [operands[0], operands[1], "-1"])]
        if op in ("neg", "negw"):
            need(2)
            return [("sub" if op == "neg" else "subw",
                     [operands[0], "x0", operands[1]])]
        if op == "seqz":
            need(2)
            return [("sltiu", [operands[0], operands[1], "1"])]
        if op == "snez":
            need(2)
            return [("sltu", [operands[0], "x0", operands[1]])]
        if op == "sltz":
            need(2)
            return [("slt", [operands[0], operands[1], "x0"])]
        if op == "sgtz":
            need(2)
            return [("slt", [operands[0], "x0", operands[1]])]
        raise AsmError(ln, f"unknown pseudo {op}")

    def _eval_const(self, tok: str, ln: int) -> int:
        # li takes a pure constant; label addresses go through la
        tok = tok.strip()
        if tok in self.symbols or (_EXPR_RE.match(tok) and _EXPR_RE.match(tok).group(1) in self.symbols):
            raise AsmError(ln, "li takes a constant; use la for addresses")
        return _parse_int(tok, ln)


def _li_sequence(rd: str, value: int, ln: int) -> list:
    if not -(1 << 63) <= value < (1 << 64):
        raise AsmError(ln, f"li constant out of 64-bit range: {value:#x}")
    if value >= (1 << 63):
        value -= 1 << 64

    def build(v: int) -> list:
        if -2048 <= v <= 2047:
            return [("addi", [rd, "x0", str(v)])]
        if -(1 << 31) <= v < (1 << 31):
            # addiw wraps at 32 bits, so pick the low part first
            lo = v & 0xFFF
            if lo >= 0x800:
                lo -= 0x1000
            hi = ((v - lo) >> 12) & 0xFFFFF
            seq = [("lui", [rd, str(hi)])]
            if lo:
                seq.append(("addiw", [rd, rd, str(lo)]))
            return seq
        lo = v & 0xFFF
        if lo >= 0x800:
            lo -= 0x1000
        hi = (v - lo) >> 12
        seq = build(hi)
        seq.append(("slli", [rd, rd, "12"]))
        if lo:
            seq.append(("addi", [rd, rd, str(lo)]))
        return seq

    seq = build(value)
    # merge back-to-back shifts left by a zero low part
    merged: list = []
    for item in seq:
        if merged and item[0] == "slli" and merged[-1][0] == "slli" \
                and item[1][0] == rd and merged[-1][1][0] == rd:
            total = int(merged[-1][1][2]) + int(item[1][2])
            merged[-1] = ("slli", [rd, rd, str(total)])
        else:
            merged.append(item)
    if len(merged) > 8:
        raise AsmError(ln, f"li expansion too long for {value:#x}")
    return merged


# ---------------------------------------------------------------- two passes

def assemble(text: str, base: int = 0) -> tuple:
    """Assemble source text at the given base address.

    Returns (blob, symbols) where blob is the raw little-endian image and
    symbols maps label names to absolute addresses. Raises AsmError with a
    line number on any syntax, range, or undefined-symbol problem.
    """
    asm = _Asm(base)
    lines: list = []

    for no, raw_line in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw_line)
        while True:
            m = _LABEL_RE.match(body)
            if not m or m.group(1) in XREGS or m.group(1) in FREGS:
                break
            lines.append(_Line(no, "label", m.group(1), []))
            body = m.group(2).strip()
        if not body:
            continue
        parts = body.split(None, 1)
        op = parts[0].lower()
        rest = parts[1] if len(parts) > 1 else ""
        if op.startswith("."):
            if op == ".ascii":
                lines.append(_Line(no, op, op, [rest.strip()]))
            else:
                lines.append(_Line(no, op, op, _split_operands(rest)))
        elif op in PSEUDOS:
            lines.append(_Line(no, "pseudo", op, _split_operands(rest)))
        elif op in INSTRS:
            lines.append(_Line(no, "instr", op, _split_operands(rest)))
        else:
            raise AsmError(no, f"unknown mnemonic {op!r}")

    # pass 1: layout
    pc = base
    expanded: list = []
    for line in lines:
        line.addr = pc
        if line.kind == "label":
            if line.op in asm.symbols:
                raise AsmError(line.no, f"duplicate label {line.op!r}")
            asm.symbols[line.op] = pc
            continue
        if line.kind == "instr":
            line.size = 4
        elif line.kind == "pseudo":
            line.args = asm.expand_pseudo(line.op, line.args, line.no)
            line.size = 4 * len(line.args) if line.op not in ("la", "call") else 8
        elif line.kind == ".word":
            line.size = 4 * len(line.args)
        elif line.kind == ".dword":
            line.size = 8 * len(line.args)
        elif line.kind == ".byte":
            line.size = len(line.args)
        elif line.kind == ".ascii":
            line.size = len(_ascii_bytes(line.args[0], line.no))
        elif line.kind == ".align":
            if len(line.args) != 1:
                raise AsmError(line.no, ".align expects one operand")
            power = _parse_int(line.args[0], line.no)
            if not 0 <= power <= 16:
                raise AsmError(line.no, f"bad alignment power {power}")
            step = 1 << power
            line.size = (-pc) % step
        elif line.kind == ".org":
            if len(line.args) != 1:
                raise AsmError(line.no, ".org expects one operand")
            # offset from the image base, as in a section-relative origin
            target = base + _parse_int(line.args[0], line.no)
            if target < pc:
                raise AsmError(line.no, f".org {target - base:#x} is behind {pc - base:#x}")
            line.size = target - pc
        else:
            raise AsmError(line.no, f"unknown directive {line.kind!r}")
        pc += line.size
        expanded.append(line)

    # pass 2: emission
    out = bytearray()
    for line in expanded:
        ln = line.no
        if line.kind == "instr":
            word = asm.encode(line.op, line.args, line.addr, ln)
            out += word.to_bytes(4, "little")
        elif line.kind == "pseudo":
            pc = line.addr
            if line.op in ("la", "call"):
                operands = line.args[0][1]
                target_tok = operands[1] if line.op == "la" else operands[0]
                rd = "x1" if line.op == "call" else operands[0]
                target = asm._eval(target_tok, ln)
                off = target - pc
                hi = ((off + 0x800) >> 12) & 0xFFFFF
                lo = off - ((hi << 12) - ((hi & 0x80000) << 13))
                if not -2048 <= lo <= 2047:
                    raise AsmError(ln, f"target {target:#x} out of pc-relative range")
                out += asm.encode("auipc", [rd, str(hi)], pc, ln).to_bytes(4, "little")
                if line.op == "la":
                    out += asm.encode("addi", [rd, rd, str(lo)], pc + 4, ln).to_bytes(4, "little")
                else:
                    out += asm.encode("jalr", [rd, rd, str(lo)], pc + 4, ln).to_bytes(4, "little")
            else:
                for op, operands in line.args:
                    out += asm.encode(op, operands, pc, ln).to_bytes(4, "little")
                    pc += 4
        elif line.kind == ".word":
            for tok in line.args:
                val = asm._eval(tok, ln) & 0xFFFFFFFF
                out += val.to_bytes(4, "little")
        elif line.kind == ".dword":
            for tok in line.args:
                val = asm._eval(tok, ln) & 0xFFFFFFFFFFFFFFFF
                out += val.to_bytes(8, "little")
        elif line.kind == ".byte":
            for tok in line.args:
                out += ((asm._eval(tok, ln)) & 0xFF).to_bytes(1, "little")
        elif line.kind == ".ascii":
            out += _ascii_bytes(line.args[0], ln)
        elif line.kind in (".align", ".org"):
            out += bytes(line.size)
    return bytes(out), dict(asm.symbols)


_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "0": "\0", "\\": "\\", '"': '"'}


def _ascii_bytes(tok: str, ln: int) -> bytes:
    tok = tok.strip()
    if len(tok) < 2 or tok[0] != '"' or tok[-1] != '"':
        raise AsmError(ln, ".ascii expects a double-quoted string")
    body = tok[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            i += 1
            if i >= len(body):
                raise AsmError(ln, "dangling escape in string")
            esc = body[i]
            if esc == "x":
                out.append(int(body[i + 1:i + 3], 16))
                i += 3
                continue
            if esc not in _ESCAPES:
                raise AsmError(ln, f"unknown escape \\{esc}")
            out.append(ord(_ESCAPES[esc]))
        else:
            out.append(ord(ch))
        i += 1
    return bytes(out)


def format_symbols(symbols: dict) -> str:
    """Render the symbol table as 'name 0xaddr' lines sorted by address."""
    rows = sorted(symbols.items(), key=lambda kv: (kv[1], kv[0]))
    return "".join(f"{name} 0x{addr:x}\n" for name, addr in rows)


# -------------------------------------------------------------- disassembler

def _fence_set(bits: int) -> str:
    return "".join(ch for ch, bit in _FENCE_BITS.items() if bits & bit) or "0"


def _print_instr(ins, pc: int) -> str:
    op = ins.op
    fmt = INSTRS[op][0]
    rm_tail = ""
    if fmt in ("frm", "fsqrt", "fma", "fcvti", "fcvtf", "fcvtff") and ins.rm != 7:
        rm_tail = f", {_RM_BY_NUM.get(ins.rm, 'dyn')}"
    if fmt == "r":
        return f"{op} x{ins.rd}, x{ins.rs1}, x{ins.rs2}"
    if fmt in ("i", "ish", "ishw"):
        return f"{op} x{ins.rd}, x{ins.rs1}, {ins.imm}"
    if fmt == "ld":
        return f"{op} x{ins.rd}, {ins.imm}(x{ins.rs1})"
    if fmt == "st":
        return f"{op} x{ins.rs2}, {ins.imm}(x{ins.rs1})"
    if fmt == "br":
        return f"{op} x{ins.rs1}, x{ins.rs2}, {pc + ins.imm:#x}"
    if fmt == "u":
        return f"{op} x{ins.rd}, {(ins.imm >> 12) & 0xFFFFF:#x}"
    if fmt == "jal":
        return f"jal x{ins.rd}, {pc + ins.imm:#x}"
    if fmt == "jalr":
        return f"jalr x{ins.rd}, {ins.imm}(x{ins.rs1})"
    if fmt == "fence":
        pred = (ins.imm >> 4) & 0xF
        succ = ins.imm & 0xF
        if pred == 0xF and succ == 0xF:
            return "fence"
        return f"fence {_fence_set(pred)}, {_fence_set(succ)}"
    if fmt == "fixed":
        return op
    if fmt == "sfence":
        if ins.rs2:
            return f"sfence.vma x{ins.rs1}, x{ins.rs2}"
        if ins.rs1:
            return f"sfence.vma x{ins.rs1}"
        return "sfence.vma"
    if fmt in ("csr", "csri"):
        csr = _CSR_NAMES.get(ins.imm, f"{ins.imm:#x}")
        src = f"x{ins.rs1}" if fmt == "csr" else str(ins.rs1)
        return f"{op} x{ins.rd}, {csr}, {src}"
    if fmt == "lr":
        return f"{op} x{ins.rd}, (x{ins.rs1})"
    if fmt == "amo":
        return f"{op} x{ins.rd}, x{ins.rs2}, (x{ins.rs1})"
    if fmt == "fload":
        return f"{op} f{ins.rd}, {ins.imm}(x{ins.rs1})"
    if fmt == "fstore":
        return f"{op} f{ins.rs2}, {ins.imm}(x{ins.rs1})"
    if fmt == "fma":
        return f"{op} f{ins.rd}, f{ins.rs1}, f{ins.rs2}, f{ins.rs3}{rm_tail}"
    if fmt == "frm":
        return f"{op} f{ins.rd}, f{ins.rs1}, f{ins.rs2}{rm_tail}"
    if fmt in ("fsqrt", "fcvtff"):
        return f"{op} f{ins.rd}, f{ins.rs1}{rm_tail}"
    if fmt == "fr":
        return f"{op} f{ins.rd}, f{ins.rs1}, f{ins.rs2}"
    if fmt == "fcmp":
        return f"{op} x{ins.rd}, f{ins.rs1}, f{ins.rs2}"
    if fmt == "fclass":
        return f"{op} x{ins.rd}, f{ins.rs1}"
    if fmt == "fcvti":
        return f"{op} x{ins.rd}, f{ins.rs1}{rm_tail}"
    if fmt == "fcvtf":
        return f"{op} f{ins.rd}, x{ins.rs1}{rm_tail}"
    if fmt == "fmvx":
        return f"{op} x{ins.rd}, f{ins.rs1}"
    if fmt == "fmvf":
        return f"{op} f{ins.rd}, x{ins.rs1}"
    return f".word {ins.raw:#010x}"


def disassemble(data: bytes, base: int = 0) -> str:
    """Disassemble a flat image into one instruction (or data directive)
    per line. Text produced here reassembles at the same base address."""
    lines = []
    pos = 0
    n = len(data)
    while pos < n:
        if n - pos < 2:
            lines.append(".byte " + ", ".join(f"{b:#04x}" for b in data[pos:]))
            break
        half = int.from_bytes(data[pos:pos + 2], "little")
        if half & 3 == 3:
            if n - pos < 4:
                lines.append(".byte " + ", ".join(f"{b:#04x}" for b in data[pos:]))
                break
            word = int.from_bytes(data[pos:pos + 4], "little")
            ins = decode(word)
            if ins.op == "illegal":
                lines.append(f".word {word:#010x}")
            else:
                lines.append(_print_instr(ins, base + pos))
            pos += 4
        else:
            ins = decode(half)
            if ins.op == "illegal":
                lines.append(f".byte {half & 0xFF:#04x}, {half >> 8:#04x}")
            else:
                lines.append(_print_instr(ins, base + pos))
            pos += 2
    return "\n".join(lines) + ("\n" if lines else "")
