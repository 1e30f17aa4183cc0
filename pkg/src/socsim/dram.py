"""External DRAM model: two serially-attached 16 MiB chips.

Service time for one transaction is a fixed access latency plus the
transfer itself at two bytes per cycle. The controller splits anything
larger than one burst, and anything crossing the chip boundary, into
separate transactions that each pay the latency again.
"""

from __future__ import annotations

from .bus import BusFault

__all__ = ["Dram"]


class Dram:
    LATENCY = 12
    BYTES_PER_CYCLE = 2
    MAX_BURST = 2048
    CHIP_SPAN = 1 << 24

    def __init__(self, size_mib: int = 32, counters=None,
                 latency: int = LATENCY, bytes_per_cycle: int = BYTES_PER_CYCLE):
        self.size = size_mib * (1 << 20)
        self.data = bytearray(self.size)
        self.counters = counters
        self.latency = latency
        self.bytes_per_cycle = bytes_per_cycle

    # -- timing

    def _transactions(self, off: int, n: int):
        """Split [off, off+n) at burst and chip boundaries."""
        while n > 0:
            chip_room = self.CHIP_SPAN - (off % self.CHIP_SPAN)
            chunk = min(n, self.MAX_BURST, chip_room)
            yield off, chunk
            off += chunk
            n -= chunk

    def service_cycles(self, off: int, size: int, is_write: bool) -> int:
        total = 0
        bpc = self.bytes_per_cycle
        for _, chunk in self._transactions(off, size):
            total += self.latency + (chunk + bpc - 1) // bpc
        return total

    # -- data

    def _check(self, off: int, n: int):
        if off < 0 or off + n > self.size:
            raise BusFault(off, "decerr")

    def mem_read(self, off: int, size: int) -> int:
        self._check(off, size)
        if self.counters is not None:
            self.counters.dram_bytes_rd += size
        return int.from_bytes(self.data[off:off + size], "little")

    def mem_write(self, off: int, size: int, value: int):
        self._check(off, size)
        if self.counters is not None:
            self.counters.dram_bytes_wr += size
        self.data[off:off + size] = (value & (1 << (8 * size)) - 1).to_bytes(size, "little")

    def mem_read_block(self, off: int, n: int) -> bytes:
        self._check(off, n)
        if self.counters is not None:
            self.counters.dram_bytes_rd += n
        return bytes(self.data[off:off + n])

    def mem_write_block(self, off: int, data: bytes):
        self._check(off, len(data))
        if self.counters is not None:
            self.counters.dram_bytes_wr += len(data)
        self.data[off:off + len(data)] = data

    # -- backdoor (no timing, no counters)

    def load_image(self, off: int, blob: bytes):
        self._check(off, len(blob))
        self.data[off:off + len(blob)] = blob

    def dump(self, off: int, n: int) -> bytes:
        self._check(off, n)
        return bytes(self.data[off:off + n])
