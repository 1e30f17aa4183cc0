"""RV64GC hart: fetch, decode, execute, privilege, traps, and CSRs.

One `step()` retires at most one instruction and accumulates the memory
stall it caused in `self.stall`. Fetch goes through a line-sized micro
buffer refilled from the instruction port; the buffer is discarded on
anything that can change the translation or the code underneath it
(satp writes, sfence.vma, fence.i, traps, and privilege returns).
"""

from __future__ import annotations

from .decode import decode
from . import softfloat as sf
from .mmu import Mmu, PageFault, WalkAccessFault
from ..bus import BusFault
from ..kernel import Counters

MASK64 = (1 << 64) - 1
MASK32 = (1 << 32) - 1

# synchronous causes
CAUSE_MISALIGNED_FETCH = 0
CAUSE_FETCH_ACCESS = 1
CAUSE_ILLEGAL = 2
CAUSE_BREAKPOINT = 3
CAUSE_MISALIGNED_LOAD = 4
CAUSE_LOAD_ACCESS = 5
CAUSE_MISALIGNED_STORE = 6
CAUSE_STORE_ACCESS = 7
CAUSE_ECALL_U = 8
CAUSE_ECALL_S = 9
CAUSE_ECALL_M = 11
CAUSE_FETCH_PAGE_FAULT = 12
CAUSE_LOAD_PAGE_FAULT = 13
CAUSE_STORE_PAGE_FAULT = 15

# interrupt causes
IRQ_S_SOFT = 1
IRQ_M_SOFT = 3
IRQ_S_TIMER = 5
IRQ_M_TIMER = 7
IRQ_S_EXT = 9
IRQ_M_EXT = 11

MIP_SSIP = 1 << IRQ_S_SOFT
MIP_MSIP = 1 << IRQ_M_SOFT
MIP_STIP = 1 << IRQ_S_TIMER
MIP_MTIP = 1 << IRQ_M_TIMER
MIP_SEIP = 1 << IRQ_S_EXT
MIP_MEIP = 1 << IRQ_M_EXT

PRV_U = 0
PRV_S = 1
PRV_M = 3

# mstatus fields
MST_SIE = 1 << 1
MST_MIE = 1 << 3
MST_SPIE = 1 << 5
MST_MPIE = 1 << 7
MST_SPP = 1 << 8
MST_MPP_SHIFT = 11
MST_FS_SHIFT = 13
MST_MPRV = 1 << 17
MST_SUM = 1 << 18
MST_MXR = 1 << 19
MST_TVM = 1 << 20
MST_TW = 1 << 21
MST_TSR = 1 << 22

_MSTATUS_WMASK = (MST_SIE | MST_MIE | MST_SPIE | MST_MPIE | MST_SPP
                  | (3 << MST_MPP_SHIFT) | (3 << MST_FS_SHIFT)
                  | MST_MPRV | MST_SUM | MST_MXR | MST_TVM | MST_TW | MST_TSR)
_SSTATUS_MASK = MST_SIE | MST_SPIE | MST_SPP | (3 << MST_FS_SHIFT) | MST_SUM | MST_MXR
_XL64 = (2 << 32) | (2 << 34)  # UXL=SXL=64-bit, read-only

_MIE_MASK = MIP_SSIP | MIP_MSIP | MIP_STIP | MIP_MTIP | MIP_SEIP | MIP_MEIP
_MIP_WMASK = MIP_SSIP | MIP_STIP | MIP_SEIP
_MIDELEG_MASK = MIP_SSIP | MIP_STIP | MIP_SEIP
_MEDELEG_MASK = 0xFFFF & ~(1 << CAUSE_ECALL_M)

# MXL=64 plus extension letters and the privilege levels implemented
MISA = ((2 << 62) | (1 << 0) | (1 << 2) | (1 << 3) | (1 << 5)
        | (1 << 8) | (1 << 12) | (1 << 18) | (1 << 20))

# CSR numbers
CSR_FFLAGS = 0x001
CSR_FRM = 0x002
CSR_FCSR = 0x003
CSR_CYCLE = 0xC00
CSR_TIME = 0xC01
CSR_INSTRET = 0xC02
CSR_SSTATUS = 0x100
CSR_SIE = 0x104
CSR_STVEC = 0x105
CSR_SCOUNTEREN = 0x106
CSR_SSCRATCH = 0x140
CSR_SEPC = 0x141
CSR_SCAUSE = 0x142
CSR_STVAL = 0x143
CSR_SIP = 0x144
CSR_SATP = 0x180
CSR_MVENDORID = 0xF11
CSR_MARCHID = 0xF12
CSR_MIMPID = 0xF13
CSR_MHARTID = 0xF14
CSR_MSTATUS = 0x300
CSR_MISA = 0x301
CSR_MEDELEG = 0x302
CSR_MIDELEG = 0x303
CSR_MIE = 0x304
CSR_MTVEC = 0x305
CSR_MCOUNTEREN = 0x306
CSR_MSCRATCH = 0x340
CSR_MEPC = 0x341
CSR_MCAUSE = 0x342
CSR_MTVAL = 0x343
CSR_MIP = 0x344
CSR_MCYCLE = 0xB00
CSR_MINSTRET = 0xB02

_LR_GRANULE = 64

_QNAN32 = 0x7FC00000


class Illegal(Exception):
    """Raised inside execute when the instruction must trap as illegal."""


class Trap(Exception):
    def __init__(self, cause: int, tval: int = 0):
        self.cause = cause
        self.tval = tval


def _sext32(v: int) -> int:
    v &= MASK32
    return (v - (1 << 32)) & MASK64 if v & 0x8000_0000 else v


def _signed(v: int) -> int:
    return v - (1 << 64) if v & (1 << 63) else v


def _signed32(v: int) -> int:
    v &= MASK32
    return v - (1 << 32) if v & 0x8000_0000 else v


class Core:
    """Single RV64GC hart bound to an instruction and data port.

    The port must provide fetch(pa, size), load(pa, size), store(pa, size,
    value), read_pte(pa), and fence_i(), each returning or including a cycle
    cost. Bus errors surface as BusFault and become access-fault traps.
    """

    def __init__(self, port, boot_pc: int = 0x8000_0000, counters: Counters = None,
                 cycle_fn=None):
        self.port = port
        self.counters = counters if counters is not None else Counters()
        self.cycle_fn = cycle_fn or (lambda: 0)
        self.regs = [0] * 32
        self.fregs = [0] * 32
        self.pc = boot_pc & MASK64
        self.next_pc = 0
        self.priv = PRV_M
        self.stall = 0
        self.waiting = False
        self.fatal_cause = None

        self.mstatus = 0
        self.medeleg = 0
        self.mideleg = 0
        self.mie = 0
        self.mip_hw = 0     # device-driven level bits (MSIP/MTIP/MEIP/SEIP)
        self.mip_soft = 0   # software-writable bits (SSIP/STIP/SEIP)
        self.mtvec = 0
        self.stvec = 0
        self.mscratch = 0
        self.sscratch = 0
        self.mepc = 0
        self.sepc = 0
        self.mcause = 0
        self.scause = 0
        self.mtval = 0
        self.stval = 0
        self.mcounteren = 0
        self.scounteren = 0
        self.satp = 0
        self.fflags = 0
        self.frm = 0

        self.res_addr = None   # LR reservation, granule-aligned physical
        self.mmu = Mmu(port.read_pte)
        self._dcache: dict = {}
        self._ibuf_va = -1
        self._ibuf = b""

    # ------------------------------------------------------------------ mip

    def mip(self) -> int:
        return self.mip_hw | self.mip_soft

    def set_mip(self, bit: int, level: bool):
        """Device-side interrupt line update (CLINT and PLIC call this)."""
        if level:
            self.mip_hw |= bit
        else:
            self.mip_hw &= ~bit

    def _pending_interrupt(self):
        pend = self.mip() & self.mie
        if not pend:
            return None
        m_pend = pend & ~self.mideleg
        if m_pend and (self.priv < PRV_M or self.mstatus & MST_MIE):
            pend = m_pend
        else:
            pend &= self.mideleg
            if not pend or self.priv > PRV_S or (self.priv == PRV_S
                                                 and not self.mstatus & MST_SIE):
                return None
        for irq in (IRQ_M_EXT, IRQ_M_SOFT, IRQ_M_TIMER, IRQ_S_EXT, IRQ_S_SOFT,
                    IRQ_S_TIMER):
            if pend & (1 << irq):
                return irq
        return None

    # ----------------------------------------------------------------- step

    def step(self) -> str:
        self.stall = 0
        if self.waiting:
            if self.mip() & self.mie:
                self.waiting = False
                self.pc = (self.pc + 4) & MASK64
                self.counters.instret += 1
                return "retired"
            return "waiting"
        irq = self._pending_interrupt()
        if irq is not None:
            self._take_trap(irq, 0, interrupt=True)
            return "trapped"
        try:
            ins, size = self._fetch()
            self.next_pc = (self.pc + size) & MASK64
            _OP_TABLE[ins.op](self, ins)
        except Trap as t:
            self._take_trap(t.cause, t.tval)
            return "trapped"
        if self.waiting:
            return "waiting"
        self.pc = self.next_pc
        self.counters.instret += 1
        return "retired"

    # ---------------------------------------------------------------- fetch

    def _fetch(self):
        pc = self.pc
        lo = self._fetch_half(pc)
        if lo & 3 == 3:
            raw = lo | self._fetch_half((pc + 2) & MASK64) << 16
            size = 4
        else:
            raw = lo
            size = 2
        ins = self._dcache.get(raw)
        if ins is None:
            ins = decode(raw)
            self._dcache[raw] = ins
        if ins.op == "illegal":
            raise Trap(CAUSE_ILLEGAL, raw)
        return ins, size

    def _fetch_half(self, va: int) -> int:
        line = va & ~63
        if line != self._ibuf_va:
            pa = self._translate(line, "x")
            try:
                data, cycles = self.port.fetch(pa, 64)
            except BusFault:
                raise Trap(CAUSE_FETCH_ACCESS, va) from None
            self.stall += cycles
            self._ibuf_va = line
            self._ibuf = data
        else:
            self.counters.l1i_hits += 1
        off = va - line
        return self._ibuf[off] | self._ibuf[off + 1] << 8

    def flush_fetch(self):
        self._ibuf_va = -1

    # ------------------------------------------------------------ translate

    def _translate(self, va: int, acc: str) -> int:
        priv = self.priv
        if acc != "x" and priv == PRV_M and self.mstatus & MST_MPRV:
            priv = (self.mstatus >> MST_MPP_SHIFT) & 3
        if priv == PRV_M or self.satp >> 60 == 0:
            return va
        try:
            pa, cycles = self.mmu.translate(
                va, acc, priv, self.satp,
                bool(self.mstatus & MST_MXR), bool(self.mstatus & MST_SUM))
        except PageFault:
            raise Trap(_PAGE_FAULT_CAUSE[acc], va) from None
        except WalkAccessFault:
            raise Trap(_ACCESS_FAULT_CAUSE[acc], va) from None
        self.stall += cycles
        return pa

    # --------------------------------------------------------------- memory

    def _load(self, va: int, size: int) -> int:
        if va % size:
            raise Trap(CAUSE_MISALIGNED_LOAD, va)
        pa = self._translate(va, "r")
        try:
            value, cycles = self.port.load(pa, size)
        except BusFault:
            raise Trap(CAUSE_LOAD_ACCESS, va) from None
        self.stall += cycles
        return value

    def _store(self, va: int, size: int, value: int):
        if va % size:
            raise Trap(CAUSE_MISALIGNED_STORE, va)
        pa = self._translate(va, "w")
        try:
            self.stall += self.port.store(pa, size, value & (1 << 8 * size) - 1)
        except BusFault:
            raise Trap(CAUSE_STORE_ACCESS, va) from None
        if self.res_addr is not None and pa & ~(_LR_GRANULE - 1) == self.res_addr:
            self.res_addr = None

    # ---------------------------------------------------------------- traps

    def _take_trap(self, cause: int, tval: int, interrupt: bool = False):
        self.flush_fetch()
        self.res_addr = None
        if interrupt:
            self.counters.irqs_taken += 1
        else:
            self.counters.traps += 1
        deleg = self.mideleg if interrupt else self.medeleg
        to_s = self.priv <= PRV_S and deleg >> cause & 1
        if to_s:
            self.sepc = self.pc
            self.scause = cause | (1 << 63 if interrupt else 0)
            self.stval = tval & MASK64
            st = self.mstatus
            st = (st & ~MST_SPIE) | (MST_SPIE if st & MST_SIE else 0)
            st &= ~(MST_SIE | MST_SPP)
            if self.priv == PRV_S:
                st |= MST_SPP
            self.mstatus = st
            self.priv = PRV_S
            vec = self.stvec
        else:
            self.mepc = self.pc
            self.mcause = cause | (1 << 63 if interrupt else 0)
            self.mtval = tval & MASK64
            st = self.mstatus
            st = (st & ~MST_MPIE) | (MST_MPIE if st & MST_MIE else 0)
            st &= ~(MST_MIE | (3 << MST_MPP_SHIFT))
            st |= self.priv << MST_MPP_SHIFT
            self.mstatus = st
            self.priv = PRV_M
            vec = self.mtvec
        base = vec & ~3 & MASK64
        if interrupt and vec & 3 == 1:
            self.pc = (base + 4 * cause) & MASK64
        else:
            self.pc = base
        if not interrupt and base == 0:
            self.fatal_cause = cause

    # ----------------------------------------------------------------- CSRs

    def _csr_read(self, num: int) -> int:
        if num == CSR_MSTATUS:
            return self._status_read()
        if num == CSR_SSTATUS:
            return self._status_read() & (_SSTATUS_MASK | _XL64 | 1 << 63)
        if num == CSR_MISA:
            return MISA
        if num == CSR_MIE:
            return self.mie
        if num == CSR_SIE:
            return self.mie & self.mideleg
        if num == CSR_MIP:
            return self.mip()
        if num == CSR_SIP:
            return self.mip() & self.mideleg
        if num == CSR_MEDELEG:
            return self.medeleg
        if num == CSR_MIDELEG:
            return self.mideleg
        if num == CSR_MTVEC:
            return self.mtvec
        if num == CSR_STVEC:
            return self.stvec
        if num == CSR_MSCRATCH:
            return self.mscratch
        if num == CSR_SSCRATCH:
            return self.sscratch
        if num == CSR_MEPC:
            return self.mepc
        if num == CSR_SEPC:
            return self.sepc
        if num == CSR_MCAUSE:
            return self.mcause
        if num == CSR_SCAUSE:
            return self.scause
        if num == CSR_MTVAL:
            return self.mtval
        if num == CSR_STVAL:
            return self.stval
        if num == CSR_MCOUNTEREN:
            return self.mcounteren
        if num == CSR_SCOUNTEREN:
            return self.scounteren
        if num == CSR_SATP:
            if self.priv == PRV_S and self.mstatus & MST_TVM:
                raise Illegal
            return self.satp
        if num in (CSR_FFLAGS, CSR_FRM, CSR_FCSR):
            self._require_fp()
            if num == CSR_FFLAGS:
                return self.fflags
            if num == CSR_FRM:
                return self.frm
            return self.frm << 5 | self.fflags
        if num in (CSR_CYCLE, CSR_TIME, CSR_INSTRET):
            self._check_counter(num - CSR_CYCLE)
            if num == CSR_INSTRET:
                return self.counters.instret & MASK64
            return self.cycle_fn() & MASK64
        if num == CSR_MCYCLE:
            return self.cycle_fn() & MASK64
        if num == CSR_MINSTRET:
            return self.counters.instret & MASK64
        if num in (CSR_MVENDORID, CSR_MARCHID, CSR_MIMPID, CSR_MHARTID):
            return 0
        raise Illegal

    def _csr_write(self, num: int, value: int):
        value &= MASK64
        if num == CSR_MSTATUS:
            self._status_write(value, _MSTATUS_WMASK)
        elif num == CSR_SSTATUS:
            self._status_write(value, _SSTATUS_MASK)
        elif num == CSR_MISA:
            pass  # fixed
        elif num == CSR_MIE:
            self.mie = value & _MIE_MASK
        elif num == CSR_SIE:
            keep = self.mie & ~self.mideleg
            self.mie = keep | (value & self.mideleg & _MIE_MASK)
        elif num == CSR_MIP:
            self.mip_soft = value & _MIP_WMASK
        elif num == CSR_SIP:
            # only SSIP is software-writable from S-mode
            keep = self.mip_soft & ~(MIP_SSIP & self.mideleg)
            self.mip_soft = keep | (value & MIP_SSIP & self.mideleg)
        elif num == CSR_MEDELEG:
            self.medeleg = value & _MEDELEG_MASK
        elif num == CSR_MIDELEG:
            self.mideleg = value & _MIDELEG_MASK
        elif num == CSR_MTVEC:
            self.mtvec = value & ~2
        elif num == CSR_STVEC:
            self.stvec = value & ~2
        elif num == CSR_MSCRATCH:
            self.mscratch = value
        elif num == CSR_SSCRATCH:
            self.sscratch = value
        elif num == CSR_MEPC:
            self.mepc = value & ~1
        elif num == CSR_SEPC:
            self.sepc = value & ~1
        elif num == CSR_MCAUSE:
            self.mcause = value
        elif num == CSR_SCAUSE:
            self.scause = value
        elif num == CSR_MTVAL:
            self.mtval = value
        elif num == CSR_STVAL:
            self.stval = value
        elif num == CSR_MCOUNTEREN:
            self.mcounteren = value & 7
        elif num == CSR_SCOUNTEREN:
            self.scounteren = value & 7
        elif num == CSR_SATP:
            if self.priv == PRV_S and self.mstatus & MST_TVM:
                raise Illegal
            mode = value >> 60
            if mode in (0, 8):
                self.satp = value & ((0xF << 60) | (1 << 44) - 1)
                self.mmu.flush()
                self.flush_fetch()
        elif num == CSR_FFLAGS:
            self._require_fp()
            self.fflags = value & 0x1F
            self._dirty_fp()
        elif num == CSR_FRM:
            self._require_fp()
            self.frm = value & 7
            self._dirty_fp()
        elif num == CSR_FCSR:
            self._require_fp()
            self.fflags = value & 0x1F
            self.frm = value >> 5 & 7
            self._dirty_fp()
        elif num in (CSR_MCYCLE, CSR_MINSTRET):
            pass  # counters are simulator-owned; writes are ignored
        else:
            raise Illegal

    def _status_read(self) -> int:
        st = self.mstatus | _XL64
        if (st >> MST_FS_SHIFT) & 3 == 3:
            st |= 1 << 63
        return st

    def _status_write(self, value: int, mask: int):
        st = (self.mstatus & ~mask) | (value & mask)
        if (st >> MST_MPP_SHIFT) & 3 == 2:
            st &= ~(3 << MST_MPP_SHIFT)
        self.mstatus = st

    def _check_counter(self, bit: int):
        if self.priv < PRV_M and not self.mcounteren >> bit & 1:
            raise Illegal
        if self.priv == PRV_U and not self.scounteren >> bit & 1:
            raise Illegal

    def csr_access(self, num: int, write: bool):
        if (num >> 8) & 3 > self.priv:
            raise Illegal
        if write and num >> 10 == 3:
            raise Illegal

    # ------------------------------------------------------------------- FP

    def _require_fp(self):
        if not (self.mstatus >> MST_FS_SHIFT) & 3:
            raise Illegal

    def _dirty_fp(self):
        self.mstatus |= 3 << MST_FS_SHIFT

    def read_f32(self, r: int) -> int:
        v = self.fregs[r]
        return v & MASK32 if v >> 32 == MASK32 else _QNAN32

    def write_f32(self, r: int, v: int):
        self.fregs[r] = v & MASK32 | 0xFFFF_FFFF_0000_0000
        self._dirty_fp()

    def write_f64(self, r: int, v: int):
        self.fregs[r] = v & MASK64
        self._dirty_fp()

    def resolve_rm(self, rm: int) -> int:
        if rm == 7:
            rm = self.frm
        if rm > 4:
            raise Illegal
        return rm

    def set_flags(self, flags: int):
        if flags:
            self.fflags |= flags
            self._dirty_fp()

    # ------------------------------------------------------------- register

    def set_reg(self, rd: int, value: int):
        if rd:
            self.regs[rd] = value & MASK64


_PAGE_FAULT_CAUSE = {"x": CAUSE_FETCH_PAGE_FAULT, "r": CAUSE_LOAD_PAGE_FAULT,
                     "w": CAUSE_STORE_PAGE_FAULT}
_ACCESS_FAULT_CAUSE = {"x": CAUSE_FETCH_ACCESS, "r": CAUSE_LOAD_ACCESS,
                       "w": CAUSE_STORE_ACCESS}


# ======================================================================= ops

def _op_lui(c, i):
    c.set_reg(i.rd, i.imm)


def _op_auipc(c, i):
    c.set_reg(i.rd, c.pc + i.imm)


def _op_jal(c, i):
    c.set_reg(i.rd, c.next_pc)
    c.next_pc = (c.pc + i.imm) & MASK64


def _op_jalr(c, i):
    target = (c.regs[i.rs1] + i.imm) & MASK64 & ~1
    c.set_reg(i.rd, c.next_pc)
    c.next_pc = target


def _branch(cond):
    def op(c, i):
        if cond(c.regs[i.rs1], c.regs[i.rs2]):
            c.next_pc = (c.pc + i.imm) & MASK64
    return op


_op_beq = _branch(lambda a, b: a == b)
_op_bne = _branch(lambda a, b: a != b)
_op_blt = _branch(lambda a, b: _signed(a) < _signed(b))
_op_bge = _branch(lambda a, b: _signed(a) >= _signed(b))
_op_bltu = _branch(lambda a, b: a < b)
_op_bgeu = _branch(lambda a, b: a >= b)


def _load_op(size, signed):
    if signed:
        sbit = 1 << (8 * size - 1)
        full = 1 << 8 * size

        def op(c, i):
            v = c._load((c.regs[i.rs1] + i.imm) & MASK64, size)
            c.set_reg(i.rd, v - full if v & sbit else v)
    else:
        def op(c, i):
            c.set_reg(i.rd, c._load((c.regs[i.rs1] + i.imm) & MASK64, size))
    return op


_op_lb = _load_op(1, True)
_op_lh = _load_op(2, True)
_op_lw = _load_op(4, True)
_op_ld = _load_op(8, True)
_op_lbu = _load_op(1, False)
_op_lhu = _load_op(2, False)
_op_lwu = _load_op(4, False)


def _store_op(size):
    def op(c, i):
        c._store((c.regs[i.rs1] + i.imm) & MASK64, size, c.regs[i.rs2])
    return op


_op_sb = _store_op(1)
_op_sh = _store_op(2)
_op_sw = _store_op(4)
_op_sd = _store_op(8)


def _op_addi(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] + i.imm)


def _op_slti(c, i):
    c.set_reg(i.rd, 1 if _signed(c.regs[i.rs1]) < i.imm else 0)


def _op_sltiu(c, i):
    c.set_reg(i.rd, 1 if c.regs[i.rs1] < i.imm & MASK64 else 0)


def _op_xori(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] ^ i.imm)


def _op_ori(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] | i.imm)


def _op_andi(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] & i.imm)


def _op_slli(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] << i.imm)


def _op_srli(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] >> i.imm)


def _op_srai(c, i):
    c.set_reg(i.rd, _signed(c.regs[i.rs1]) >> i.imm)


def _op_addiw(c, i):
    c.set_reg(i.rd, _sext32(c.regs[i.rs1] + i.imm))


def _op_slliw(c, i):
    c.set_reg(i.rd, _sext32(c.regs[i.rs1] << i.imm))


def _op_srliw(c, i):
    c.set_reg(i.rd, _sext32((c.regs[i.rs1] & MASK32) >> i.imm))


def _op_sraiw(c, i):
    c.set_reg(i.rd, _sext32(_signed32(c.regs[i.rs1]) >> i.imm))


def _op_add(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] + c.regs[i.rs2])


def _op_sub(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] - c.regs[i.rs2])


def _op_sll(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] << (c.regs[i.rs2] & 63))


def _op_slt(c, i):
    c.set_reg(i.rd, 1 if _signed(c.regs[i.rs1]) < _signed(c.regs[i.rs2]) else 0)


def _op_sltu(c, i):
    c.set_reg(i.rd, 1 if c.regs[i.rs1] < c.regs[i.rs2] else 0)


def _op_xor(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] ^ c.regs[i.rs2])


def _op_srl(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] >> (c.regs[i.rs2] & 63))


def _op_sra(c, i):
    c.set_reg(i.rd, _signed(c.regs[i.rs1]) >> (c.regs[i.rs2] & 63))


def _op_or(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] | c.regs[i.rs2])


def _op_and(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] & c.regs[i.rs2])


def _op_addw(c, i):
    c.set_reg(i.rd, _sext32(c.regs[i.rs1] + c.regs[i.rs2]))


def _op_subw(c, i):
    c.set_reg(i.rd, _sext32(c.regs[i.rs1] - c.regs[i.rs2]))


def _op_sllw(c, i):
    c.set_reg(i.rd, _sext32(c.regs[i.rs1] << (c.regs[i.rs2] & 31)))


def _op_srlw(c, i):
    c.set_reg(i.rd, _sext32((c.regs[i.rs1] & MASK32) >> (c.regs[i.rs2] & 31)))


def _op_sraw(c, i):
    c.set_reg(i.rd, _sext32(_signed32(c.regs[i.rs1]) >> (c.regs[i.rs2] & 31)))


def _op_mul(c, i):
    c.set_reg(i.rd, c.regs[i.rs1] * c.regs[i.rs2])


def _op_mulh(c, i):
    c.set_reg(i.rd, (_signed(c.regs[i.rs1]) * _signed(c.regs[i.rs2])) >> 64)


def _op_mulhsu(c, i):
    c.set_reg(i.rd, (_signed(c.regs[i.rs1]) * c.regs[i.rs2]) >> 64)


def _op_mulhu(c, i):
    c.set_reg(i.rd, (c.regs[i.rs1] * c.regs[i.rs2]) >> 64)


def _op_mulw(c, i):
    c.set_reg(i.rd, _sext32(c.regs[i.rs1] * c.regs[i.rs2]))


def _div_signed(a, b, bits):
    if b == 0:
        return -1
    lo = -(1 << bits - 1)
    if a == lo and b == -1:
        return lo
    q = abs(a) // abs(b)
    return -q if (a < 0) != (b < 0) else q


def _rem_signed(a, b):
    if b == 0:
        return a
    r = abs(a) % abs(b)
    return -r if a < 0 else r


def _op_div(c, i):
    c.set_reg(i.rd, _div_signed(_signed(c.regs[i.rs1]), _signed(c.regs[i.rs2]), 64))


def _op_divu(c, i):
    b = c.regs[i.rs2]
    c.set_reg(i.rd, MASK64 if b == 0 else c.regs[i.rs1] // b)


def _op_rem(c, i):
    c.set_reg(i.rd, _rem_signed(_signed(c.regs[i.rs1]), _signed(c.regs[i.rs2])))


def _op_remu(c, i):
    b = c.regs[i.rs2]
    c.set_reg(i.rd, c.regs[i.rs1] if b == 0 else c.regs[i.rs1] % b)


def _op_divw(c, i):
    c.set_reg(i.rd, _sext32(_div_signed(_signed32(c.regs[i.rs1]),
                                        _signed32(c.regs[i.rs2]), 32)))


def _op_divuw(c, i):
    a = c.regs[i.rs1] & MASK32
    b = c.regs[i.rs2] & MASK32
    c.set_reg(i.rd, _sext32(MASK32 if b == 0 else a // b))


def _op_remw(c, i):
    c.set_reg(i.rd, _sext32(_rem_signed(_signed32(c.regs[i.rs1]),
                                        _signed32(c.regs[i.rs2]))))


def _op_remuw(c, i):
    a = c.regs[i.rs1] & MASK32
    b = c.regs[i.rs2] & MASK32
    c.set_reg(i.rd, _sext32(a if b == 0 else a % b))


# ------------------------------------------------------------------ A ext

def _amo_pa(c, i, size):
    va = c.regs[i.rs1] & MASK64
    if va % size:
        raise Trap(CAUSE_MISALIGNED_STORE, va)
    return va, c._translate(va, "w")


def _op_lr_w(c, i):
    va = c.regs[i.rs1] & MASK64
    if va % 4:
        raise Trap(CAUSE_MISALIGNED_LOAD, va)
    pa = c._translate(va, "r")
    try:
        v, cycles = c.port.load(pa, 4)
    except BusFault:
        raise Trap(CAUSE_LOAD_ACCESS, va) from None
    c.stall += cycles
    c.res_addr = pa & ~(_LR_GRANULE - 1)
    c.set_reg(i.rd, _sext32(v))


def _op_lr_d(c, i):
    va = c.regs[i.rs1] & MASK64
    if va % 8:
        raise Trap(CAUSE_MISALIGNED_LOAD, va)
    pa = c._translate(va, "r")
    try:
        v, cycles = c.port.load(pa, 8)
    except BusFault:
        raise Trap(CAUSE_LOAD_ACCESS, va) from None
    c.stall += cycles
    c.res_addr = pa & ~(_LR_GRANULE - 1)
    c.set_reg(i.rd, v)


def _sc(c, i, size):
    va, pa = _amo_pa(c, i, size)
    ok = c.res_addr is not None and pa & ~(_LR_GRANULE - 1) == c.res_addr
    c.res_addr = None
    if ok:
        try:
            c.stall += c.port.store(pa, size, c.regs[i.rs2] & (1 << 8 * size) - 1)
        except BusFault:
            raise Trap(CAUSE_STORE_ACCESS, va) from None
        c.set_reg(i.rd, 0)
    else:
        c.set_reg(i.rd, 1)


def _op_sc_w(c, i):
    _sc(c, i, 4)


def _op_sc_d(c, i):
    _sc(c, i, 8)


def _amo_op(size, fn):
    mask = (1 << 8 * size) - 1

    def op(c, i):
        va, pa = _amo_pa(c, i, size)
        try:
            old, cycles = c.port.load(pa, size)
            c.stall += cycles
            new = fn(old, c.regs[i.rs2] & mask, size) & mask
            c.stall += c.port.store(pa, size, new)
        except BusFault:
            raise Trap(CAUSE_STORE_ACCESS, va) from None
        if c.res_addr is not None and pa & ~(_LR_GRANULE - 1) == c.res_addr:
            c.res_addr = None
        c.set_reg(i.rd, _sext32(old) if size == 4 else old)
    return op


def _amo_signed(fn):
    def g(old, src, size):
        bits = 8 * size
        s = lambda v: v - (1 << bits) if v >> (bits - 1) else v
        return fn(s(old), s(src))
    return g


_AMO_FNS = {
    "amoswap": lambda old, src, size: src,
    "amoadd": lambda old, src, size: old + src,
    "amoxor": lambda old, src, size: old ^ src,
    "amoand": lambda old, src, size: old & src,
    "amoor": lambda old, src, size: old | src,
    "amomin": _amo_signed(lambda a, b: a if a < b else b),
    "amomax": _amo_signed(lambda a, b: a if a > b else b),
    "amominu": lambda old, src, size: old if old < src else src,
    "amomaxu": lambda old, src, size: old if old > src else src,
}


# ----------------------------------------------------------------- system

def _op_fence(c, i):
    pass


def _op_fence_i(c, i):
    c.stall += c.port.fence_i()
    c.flush_fetch()
    c._dcache.clear()


def _op_ecall(c, i):
    raise Trap(CAUSE_ECALL_U + (c.priv if c.priv != PRV_M else 3), 0)


def _op_ebreak(c, i):
    raise Trap(CAUSE_BREAKPOINT, c.pc)


def _op_mret(c, i):
    if c.priv != PRV_M:
        raise Illegal
    st = c.mstatus
    mpp = st >> MST_MPP_SHIFT & 3
    st = (st & ~MST_MIE) | (MST_MIE if st & MST_MPIE else 0)
    st |= MST_MPIE
    st &= ~(3 << MST_MPP_SHIFT)
    if mpp != PRV_M:
        st &= ~MST_MPRV
    c.mstatus = st
    c.priv = mpp
    c.next_pc = c.mepc
    c.flush_fetch()


def _op_sret(c, i):
    if c.priv < PRV_S or (c.priv == PRV_S and c.mstatus & MST_TSR):
        raise Illegal
    st = c.mstatus
    spp = PRV_S if st & MST_SPP else PRV_U
    st = (st & ~MST_SIE) | (MST_SIE if st & MST_SPIE else 0)
    st |= MST_SPIE
    st &= ~MST_SPP
    if spp != PRV_M:
        st &= ~MST_MPRV
    c.mstatus = st
    c.priv = spp
    c.next_pc = c.sepc
    c.flush_fetch()


def _op_wfi(c, i):
    if c.priv < PRV_M and c.mstatus & MST_TW:
        raise Illegal
    if not c.mip() & c.mie:
        c.waiting = True


def _op_sfence_vma(c, i):
    if c.priv < PRV_S or (c.priv == PRV_S and c.mstatus & MST_TVM):
        raise Illegal
    c.mmu.flush()
    c.flush_fetch()


def _op_csrrw(c, i):
    c.csr_access(i.imm, True)
    old = c._csr_read(i.imm) if i.rd else 0
    c._csr_write(i.imm, c.regs[i.rs1])
    c.set_reg(i.rd, old)


def _op_csrrs(c, i):
    c.csr_access(i.imm, i.rs1 != 0)
    old = c._csr_read(i.imm)
    if i.rs1:
        c._csr_write(i.imm, old | c.regs[i.rs1])
    c.set_reg(i.rd, old)


def _op_csrrc(c, i):
    c.csr_access(i.imm, i.rs1 != 0)
    old = c._csr_read(i.imm)
    if i.rs1:
        c._csr_write(i.imm, old & ~c.regs[i.rs1])
    c.set_reg(i.rd, old)


def _op_csrrwi(c, i):
    c.csr_access(i.imm, True)
    old = c._csr_read(i.imm) if i.rd else 0
    c._csr_write(i.imm, i.rs1)
    c.set_reg(i.rd, old)


def _op_csrrsi(c, i):
    c.csr_access(i.imm, i.rs1 != 0)
    old = c._csr_read(i.imm)
    if i.rs1:
        c._csr_write(i.imm, old | i.rs1)
    c.set_reg(i.rd, old)


def _op_csrrci(c, i):
    c.csr_access(i.imm, i.rs1 != 0)
    old = c._csr_read(i.imm)
    if i.rs1:
        c._csr_write(i.imm, old & ~i.rs1)
    c.set_reg(i.rd, old)


# ------------------------------------------------------------------ F/D ext

def _op_flw(c, i):
    c._require_fp()
    c.write_f32(i.rd, c._load((c.regs[i.rs1] + i.imm) & MASK64, 4))


def _op_fld(c, i):
    c._require_fp()
    c.write_f64(i.rd, c._load((c.regs[i.rs1] + i.imm) & MASK64, 8))


def _op_fsw(c, i):
    c._require_fp()
    c._store((c.regs[i.rs1] + i.imm) & MASK64, 4, c.fregs[i.rs2] & MASK32)


def _op_fsd(c, i):
    c._require_fp()
    c._store((c.regs[i.rs1] + i.imm) & MASK64, 8, c.fregs[i.rs2])


def _fp_arith2(sf_fn, fmt32):
    if fmt32:
        def op(c, i):
            c._require_fp()
            rm = c.resolve_rm(i.rm)
            v, fl = sf_fn(sf.F32, c.read_f32(i.rs1), c.read_f32(i.rs2), rm)
            c.write_f32(i.rd, v)
            c.set_flags(fl)
            c.counters.fp_ops += 1
    else:
        def op(c, i):
            c._require_fp()
            rm = c.resolve_rm(i.rm)
            v, fl = sf_fn(sf.F64, c.fregs[i.rs1], c.fregs[i.rs2], rm)
            c.write_f64(i.rd, v)
            c.set_flags(fl)
            c.counters.fp_ops += 1
    return op


def _fp_fma(neg_prod, neg_add, fmt32):
    # fmsub/fnmadd/fnmsub reduce to ffma with operand signs flipped:
    # the product sign moves onto rs1 and the addend sign onto rs3.
    fmt = sf.F32 if fmt32 else sf.F64
    sbit = fmt.sign_bit

    def op(c, i):
        c._require_fp()
        rm = c.resolve_rm(i.rm)
        if fmt32:
            a, b, d = c.read_f32(i.rs1), c.read_f32(i.rs2), c.read_f32(i.rs3)
        else:
            a, b, d = c.fregs[i.rs1], c.fregs[i.rs2], c.fregs[i.rs3]
        if neg_prod:
            a ^= sbit
        if neg_add:
            d ^= sbit
        v, fl = sf.ffma(fmt, a, b, d, rm)
        if fmt32:
            c.write_f32(i.rd, v)
        else:
            c.write_f64(i.rd, v)
        c.set_flags(fl)
        c.counters.fp_ops += 2
    return op


def _fp_sqrt(fmt32):
    def op(c, i):
        c._require_fp()
        rm = c.resolve_rm(i.rm)
        if fmt32:
            v, fl = sf.fsqrt(sf.F32, c.read_f32(i.rs1), rm)
            c.write_f32(i.rd, v)
        else:
            v, fl = sf.fsqrt(sf.F64, c.fregs[i.rs1], rm)
            c.write_f64(i.rd, v)
        c.set_flags(fl)
        c.counters.fp_ops += 1
    return op


def _fp_sgnj(mode, fmt32):
    def op(c, i):
        c._require_fp()
        if fmt32:
            a, b = c.read_f32(i.rs1), c.read_f32(i.rs2)
            sign = 1 << 31
        else:
            a, b = c.fregs[i.rs1], c.fregs[i.rs2]
            sign = 1 << 63
        if mode == "j":
            v = (a & ~sign) | (b & sign)
        elif mode == "jn":
            v = (a & ~sign) | (~b & sign)
        else:
            v = a ^ (b & sign)
        if fmt32:
            c.write_f32(i.rd, v)
        else:
            c.write_f64(i.rd, v)
    return op


def _fp_minmax(is_max, fmt32):
    def op(c, i):
        c._require_fp()
        if fmt32:
            v, fl = sf.fminmax(sf.F32, c.read_f32(i.rs1), c.read_f32(i.rs2), is_max)
            c.write_f32(i.rd, v)
        else:
            v, fl = sf.fminmax(sf.F64, c.fregs[i.rs1], c.fregs[i.rs2], is_max)
            c.write_f64(i.rd, v)
        c.set_flags(fl)
    return op


def _fp_cmp(kind, fmt32):
    fn = {"eq": sf.fcmp_eq, "lt": sf.fcmp_lt, "le": sf.fcmp_le}[kind]

    def op(c, i):
        c._require_fp()
        if fmt32:
            v, fl = fn(sf.F32, c.read_f32(i.rs1), c.read_f32(i.rs2))
        else:
            v, fl = fn(sf.F64, c.fregs[i.rs1], c.fregs[i.rs2])
        c.set_flags(fl)
        c.set_reg(i.rd, v)
    return op


def _fp_class(fmt32):
    def op(c, i):
        c._require_fp()
        if fmt32:
            v = sf.fclass(sf.F32, c.read_f32(i.rs1))
        else:
            v = sf.fclass(sf.F64, c.fregs[i.rs1])
        c.set_reg(i.rd, v)
    return op


def _fp_to_int(fmt32, bits, signed):
    mask = (1 << bits) - 1

    def op(c, i):
        c._require_fp()
        rm = c.resolve_rm(i.rm)
        src = c.read_f32(i.rs1) if fmt32 else c.fregs[i.rs1]
        v, fl = sf.f_to_int(sf.F32 if fmt32 else sf.F64, src, rm, bits, signed)
        c.set_flags(fl)
        if bits == 32:
            c.set_reg(i.rd, _sext32(v & mask))
        else:
            c.set_reg(i.rd, v & mask)
    return op


def _int_to_fp(fmt32, bits, signed):
    def op(c, i):
        c._require_fp()
        rm = c.resolve_rm(i.rm)
        v = c.regs[i.rs1]
        if bits == 32:
            v &= MASK32
            if signed and v & 0x8000_0000:
                v -= 1 << 32
        elif signed and v & (1 << 63):
            v -= 1 << 64
        r, fl = sf.int_to_f(sf.F32 if fmt32 else sf.F64, v, rm)
        if fmt32:
            c.write_f32(i.rd, r)
        else:
            c.write_f64(i.rd, r)
        c.set_flags(fl)
    return op


def _op_fcvt_s_d(c, i):
    c._require_fp()
    rm = c.resolve_rm(i.rm)
    v, fl = sf.f64_to_f32(c.fregs[i.rs1], rm)
    c.write_f32(i.rd, v)
    c.set_flags(fl)


def _op_fcvt_d_s(c, i):
    c._require_fp()
    v, fl = sf.f32_to_f64(c.read_f32(i.rs1))
    c.write_f64(i.rd, v)
    c.set_flags(fl)


def _op_fmv_x_w(c, i):
    c._require_fp()
    c.set_reg(i.rd, _sext32(c.fregs[i.rs1] & MASK32))


def _op_fmv_w_x(c, i):
    c._require_fp()
    c.write_f32(i.rd, c.regs[i.rs1] & MASK32)


def _op_fmv_x_d(c, i):
    c._require_fp()
    c.set_reg(i.rd, c.fregs[i.rs1])


def _op_fmv_d_x(c, i):
    c._require_fp()
    c.write_f64(i.rd, c.regs[i.rs1])


def _op_illegal(c, i):
    raise Trap(CAUSE_ILLEGAL, i.imm & MASK32)


_OP_TABLE = {
    "lui": _op_lui, "auipc": _op_auipc, "jal": _op_jal, "jalr": _op_jalr,
    "beq": _op_beq, "bne": _op_bne, "blt": _op_blt, "bge": _op_bge,
    "bltu": _op_bltu, "bgeu": _op_bgeu,
    "lb": _op_lb, "lh": _op_lh, "lw": _op_lw, "ld": _op_ld,
    "lbu": _op_lbu, "lhu": _op_lhu, "lwu": _op_lwu,
    "sb": _op_sb, "sh": _op_sh, "sw": _op_sw, "sd": _op_sd,
    "addi": _op_addi, "slti": _op_slti, "sltiu": _op_sltiu,
    "xori": _op_xori, "ori": _op_ori, "andi": _op_andi,
    "slli": _op_slli, "srli": _op_srli, "srai": _op_srai,
    "addiw": _op_addiw, "slliw": _op_slliw, "srliw": _op_srliw,
    "sraiw": _op_sraiw,
    "add": _op_add, "sub": _op_sub, "sll": _op_sll, "slt": _op_slt,
    "sltu": _op_sltu, "xor": _op_xor, "srl": _op_srl, "sra": _op_sra,
    "or": _op_or, "and": _op_and,
    "addw": _op_addw, "subw": _op_subw, "sllw": _op_sllw,
    "srlw": _op_srlw, "sraw": _op_sraw,
    "mul": _op_mul, "mulh": _op_mulh, "mulhsu": _op_mulhsu,
    "mulhu": _op_mulhu, "mulw": _op_mulw,
    "div": _op_div, "divu": _op_divu, "rem": _op_rem, "remu": _op_remu,
    "divw": _op_divw, "divuw": _op_divuw, "remw": _op_remw, "remuw": _op_remuw,
    "lr.w": _op_lr_w, "lr.d": _op_lr_d, "sc.w": _op_sc_w, "sc.d": _op_sc_d,
    "fence": _op_fence, "fence.i": _op_fence_i,
    "ecall": _op_ecall, "ebreak": _op_ebreak,
    "mret": _op_mret, "sret": _op_sret, "wfi": _op_wfi,
    "sfence.vma": _op_sfence_vma,
    "csrrw": _op_csrrw, "csrrs": _op_csrrs, "csrrc": _op_csrrc,
    "csrrwi": _op_csrrwi, "csrrsi": _op_csrrsi, "csrrci": _op_csrrci,
    "flw": _op_flw, "fld": _op_fld, "fsw": _op_fsw, "fsd": _op_fsd,
    "fadd.s": _fp_arith2(sf.fadd, True), "fadd.d": _fp_arith2(sf.fadd, False),
    "fsub.s": _fp_arith2(sf.fsub, True), "fsub.d": _fp_arith2(sf.fsub, False),
    "fmul.s": _fp_arith2(sf.fmul, True), "fmul.d": _fp_arith2(sf.fmul, False),
    "fdiv.s": _fp_arith2(sf.fdiv, True), "fdiv.d": _fp_arith2(sf.fdiv, False),
    "fsqrt.s": _fp_sqrt(True), "fsqrt.d": _fp_sqrt(False),
    "fmadd.s": _fp_fma(False, False, True), "fmadd.d": _fp_fma(False, False, False),
    "fmsub.s": _fp_fma(False, True, True), "fmsub.d": _fp_fma(False, True, False),
    "fnmsub.s": _fp_fma(True, False, True), "fnmsub.d": _fp_fma(True, False, False),
    "fnmadd.s": _fp_fma(True, True, True), "fnmadd.d": _fp_fma(True, True, False),
    "fsgnj.s": _fp_sgnj("j", True), "fsgnj.d": _fp_sgnj("j", False),
    "fsgnjn.s": _fp_sgnj("jn", True), "fsgnjn.d": _fp_sgnj("jn", False),
    "fsgnjx.s": _fp_sgnj("jx", True), "fsgnjx.d": _fp_sgnj("jx", False),
    "fmin.s": _fp_minmax(False, True), "fmin.d": _fp_minmax(False, False),
    "fmax.s": _fp_minmax(True, True), "fmax.d": _fp_minmax(True, False),
    "feq.s": _fp_cmp("eq", True), "feq.d": _fp_cmp("eq", False),
    "flt.s": _fp_cmp("lt", True), "flt.d": _fp_cmp("lt", False),
    "fle.s": _fp_cmp("le", True), "fle.d": _fp_cmp("le", False),
    "fclass.s": _fp_class(True), "fclass.d": _fp_class(False),
    "fcvt.w.s": _fp_to_int(True, 32, True), "fcvt.wu.s": _fp_to_int(True, 32, False),
    "fcvt.l.s": _fp_to_int(True, 64, True), "fcvt.lu.s": _fp_to_int(True, 64, False),
    "fcvt.w.d": _fp_to_int(False, 32, True), "fcvt.wu.d": _fp_to_int(False, 32, False),
    "fcvt.l.d": _fp_to_int(False, 64, True), "fcvt.lu.d": _fp_to_int(False, 64, False),
    "fcvt.s.w": _int_to_fp(True, 32, True), "fcvt.s.wu": _int_to_fp(True, 32, False),
    "fcvt.s.l": _int_to_fp(True, 64, True), "fcvt.s.lu": _int_to_fp(True, 64, False),
    "fcvt.d.w": _int_to_fp(False, 32, True), "fcvt.d.wu": _int_to_fp(False, 32, False),
    "fcvt.d.l": _int_to_fp(False, 64, True), "fcvt.d.lu": _int_to_fp(False, 64, False),
    "fcvt.s.d": _op_fcvt_s_d, "fcvt.d.s": _op_fcvt_d_s,
    "fmv.x.w": _op_fmv_x_w, "fmv.w.x": _op_fmv_w_x,
    "fmv.x.d": _op_fmv_x_d, "fmv.d.x": _op_fmv_d_x,
    "illegal": _op_illegal,
}

for _name, _fn in _AMO_FNS.items():
    _OP_TABLE[_name + ".w"] = _amo_op(4, _fn)
    _OP_TABLE[_name + ".d"] = _amo_op(8, _fn)


def _wrap_illegal(fn):
    def op(c, i):
        try:
            fn(c, i)
        except Illegal:
            raise Trap(CAUSE_ILLEGAL, i.raw & MASK32) from None
    return op


_OP_TABLE = {name: _wrap_illegal(fn) for name, fn in _OP_TABLE.items()}
