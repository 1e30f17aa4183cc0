"""sv39 address translation with a small flat TLB.

The walker never sets A/D bits: an access whose leaf PTE has A clear, or a
store whose leaf has D clear, page-faults and leaves the update to software.
Successful leaf PTEs are cached per 4 KiB virtual page in a 16-entry TLB;
permission bits are re-checked on every access so a cached entry can still
fault (for example a store hitting a clean page).
"""

from __future__ import annotations

from ..bus import BusFault

__all__ = ["PageFault", "WalkAccessFault", "Mmu",
           "PTE_V", "PTE_R", "PTE_W", "PTE_X", "PTE_U", "PTE_G", "PTE_A", "PTE_D"]

PTE_V = 1 << 0
PTE_R = 1 << 1
PTE_W = 1 << 2
PTE_X = 1 << 3
PTE_U = 1 << 4
PTE_G = 1 << 5
PTE_A = 1 << 6
PTE_D = 1 << 7

TLB_ENTRIES = 16

_LEVELS = 3
_PAGE_SHIFT = 12


class PageFault(Exception):
    def __init__(self, vaddr: int, access: str):
        super().__init__(f"page fault ({access}) at {vaddr:#x}")
        self.vaddr = vaddr
        self.access = access  # 'x', 'r', or 'w'


class WalkAccessFault(Exception):
    """The walk itself touched something unmapped or refusing reads."""

    def __init__(self, vaddr: int, access: str):
        super().__init__(f"walk access fault ({access}) at {vaddr:#x}")
        self.vaddr = vaddr
        self.access = access


class Mmu:
    def __init__(self, read_pte):
        # read_pte(paddr) -> (value, cycles)
        self._read_pte = read_pte
        self.tlb: dict = {}

    def flush(self):
        self.tlb.clear()

    def translate(self, va: int, acc: str, priv: int, satp: int,
                  mxr: bool, sum_: bool) -> tuple:
        """Translate one virtual address. Returns (pa, walk_cycles).

        priv is the effective privilege (0 or 1; machine mode and bare mode
        are the caller's short-circuit). Raises PageFault or WalkAccessFault.
        """
        hi = va >> 38
        if hi != 0 and hi != 0x3FF_FFFF:
            raise PageFault(va, acc)
        vpn = (va >> _PAGE_SHIFT) & (1 << 27) - 1
        cached = self.tlb.get(vpn)
        if cached is not None:
            pte, level = cached
            cycles = 0
        else:
            pte, level, cycles = self._walk(va, acc, satp)
            if len(self.tlb) >= TLB_ENTRIES:
                self.tlb.pop(next(iter(self.tlb)))
            self.tlb[vpn] = (pte, level)
        self._check(pte, va, acc, priv, mxr, sum_)
        ppn = pte >> 10 & (1 << 44) - 1
        span = 9 * level
        page_ppn = (ppn >> span << span) | (vpn & (1 << span) - 1)
        return (page_ppn << _PAGE_SHIFT) | (va & (1 << _PAGE_SHIFT) - 1), cycles

    def _walk(self, va: int, acc: str, satp: int) -> tuple:
        base = (satp & (1 << 44) - 1) << _PAGE_SHIFT
        cycles = 0
        for level in range(_LEVELS - 1, -1, -1):
            vpn_i = (va >> (_PAGE_SHIFT + 9 * level)) & 0x1FF
            try:
                pte, c = self._read_pte(base + vpn_i * 8)
            except BusFault:
                raise WalkAccessFault(va, acc) from None
            cycles += c
            if not pte & PTE_V or (not pte & PTE_R and pte & PTE_W) or pte >> 54:
                raise PageFault(va, acc)
            if pte & (PTE_R | PTE_X):
                if level and (pte >> 10) & (1 << 9 * level) - 1:
                    raise PageFault(va, acc)  # misaligned superpage
                return pte, level, cycles
            base = (pte >> 10 & (1 << 44) - 1) << _PAGE_SHIFT
        raise PageFault(va, acc)  # leaf never found

    @staticmethod
    def _check(pte: int, va: int, acc: str, priv: int, mxr: bool, sum_: bool):
        if priv == 0:
            if not pte & PTE_U:
                raise PageFault(va, acc)
        else:
            if pte & PTE_U and (acc == "x" or not sum_):
                raise PageFault(va, acc)
        if acc == "x":
            ok = pte & PTE_X
        elif acc == "r":
            ok = pte & PTE_R or (mxr and pte & PTE_X)
        else:
            ok = pte & PTE_W
        if not ok:
            raise PageFault(va, acc)
        if not pte & PTE_A or (acc == "w" and not pte & PTE_D):
            raise PageFault(va, acc)
