"""Cache hierarchy building blocks.

SetAssocCache is the bare set-associative engine (tags, LRU, line storage)
shared by the L1s and the last-level cache. LastLevelCache adds the
scratchpad masking scheme: any subset of the four ways can be carved out of
the cache and exposed as directly-addressed SPM through a memory window,
way-major (window offset = way * 16 KiB + set * line + byte).

Timing: a cache-port transaction costs HIT_LATENCY plus one cycle per
8-byte beat; each missing line adds the DRAM service time for one line
fill. Victim writebacks are performed immediately but add no stall; with
all four ways masked the cache is out of the loop entirely and accesses pay
bare DRAM service time.
"""

from __future__ import annotations

from .bus import BusFault

__all__ = ["SetAssocCache", "L1Cache", "LastLevelCache", "SpmWindow", "LlcRegs"]


class SetAssocCache:
    """Tags, per-set LRU, and way-major line storage."""

    def __init__(self, size: int, ways: int, line: int):
        if size % (ways * line):
            raise ValueError("cache size must be a whole number of ways of lines")
        self.size = size
        self.ways = ways
        self.line = line
        self.sets = size // (ways * line)
        self.way_bytes = self.sets * line
        self.tags = [[0] * ways for _ in range(self.sets)]
        self.valid = [[False] * ways for _ in range(self.sets)]
        self.dirty = [[False] * ways for _ in range(self.sets)]
        self.lru = [list(range(ways)) for _ in range(self.sets)]
        self.data = bytearray(size)

    def split(self, addr: int) -> tuple:
        index = addr // self.line
        return index % self.sets, index // self.sets

    def find(self, s: int, tag: int):
        valid = self.valid[s]
        tags = self.tags[s]
        for w in range(self.ways):
            if valid[w] and tags[w] == tag:
                return w
        return None

    def touch(self, s: int, w: int):
        order = self.lru[s]
        order.remove(w)
        order.insert(0, w)

    def victim(self, s: int, allowed: tuple) -> int:
        for w in allowed:
            if not self.valid[s][w]:
                return w
        for w in reversed(self.lru[s]):
            if w in allowed:
                return w
        raise ValueError("no way available for eviction")

    def line_addr(self, s: int, tag: int) -> int:
        return (tag * self.sets + s) * self.line

    def data_off(self, s: int, w: int) -> int:
        return w * self.way_bytes + s * self.line


def _split_lines(addr: int, n: int, line: int):
    pos = addr
    remaining = n
    while remaining:
        la = pos - pos % line
        lo = pos - la
        ln = min(remaining, line - lo)
        yield la, lo, ln
        pos += ln
        remaining -= ln


class L1Cache:
    """Private first-level cache in front of the shared cache.

    backend is the LastLevelCache; hits are free, a miss charges the
    backend's line-read service. Victim writebacks go to the backend with
    no added stall. In write-through mode stores never allocate and always
    pay the backend write.
    """

    def __init__(self, size: int, ways: int, line: int, backend,
                 counters=None, hit_counter: str = "l1d", writethrough: bool = False):
        self.c = SetAssocCache(size, ways, line)
        self.backend = backend
        self.counters = counters
        self.hit_counter = hit_counter
        self.writethrough = writethrough
        self._allowed = tuple(range(ways))

    def _count(self, hit: bool):
        if self.counters is None:
            return
        field = f"{self.hit_counter}_{'hits' if hit else 'misses'}"
        setattr(self.counters, field, getattr(self.counters, field) + 1)

    def _fill(self, la: int) -> tuple:
        c = self.c
        s, tag = c.split(la)
        w = c.victim(s, self._allowed)
        if c.valid[s][w] and c.dirty[s][w]:
            off = c.data_off(s, w)
            self.backend.write(c.line_addr(s, c.tags[s][w]),
                               bytes(c.data[off:off + c.line]), free=True)
        data, cycles = self.backend.read(la, c.line)
        off = c.data_off(s, w)
        c.data[off:off + c.line] = data
        c.tags[s][w] = tag
        c.valid[s][w] = True
        c.dirty[s][w] = False
        c.touch(s, w)
        return w, cycles

    def read(self, addr: int, size: int) -> tuple:
        c = self.c
        s, tag = c.split(addr)
        w = c.find(s, tag)
        cycles = 0
        if w is None:
            self._count(False)
            w, cycles = self._fill(addr - addr % c.line)
        else:
            self._count(True)
            c.touch(s, w)
        off = c.data_off(s, w) + addr % c.line
        return int.from_bytes(c.data[off:off + size], "little"), cycles

    def write(self, addr: int, size: int, value: int) -> int:
        c = self.c
        s, tag = c.split(addr)
        w = c.find(s, tag)
        blob = (value & (1 << (8 * size)) - 1).to_bytes(size, "little")
        if self.writethrough:
            if w is not None:
                self._count(True)
                c.touch(s, w)
                off = c.data_off(s, w) + addr % c.line
                c.data[off:off + size] = blob
            else:
                self._count(False)
            return self.backend.write(addr, blob)
        cycles = 0
        if w is None:
            self._count(False)
            w, cycles = self._fill(addr - addr % c.line)
        else:
            self._count(True)
            c.touch(s, w)
        off = c.data_off(s, w) + addr % c.line
        c.data[off:off + size] = blob
        c.dirty[s][w] = True
        return cycles

    def flush(self, invalidate: bool = True):
        """Write every dirty line back to the backend; optionally drop all."""
        c = self.c
        for s in range(c.sets):
            for w in range(c.ways):
                if c.valid[s][w] and c.dirty[s][w]:
                    off = c.data_off(s, w)
                    self.backend.write(c.line_addr(s, c.tags[s][w]),
                                       bytes(c.data[off:off + c.line]), free=True)
                    c.dirty[s][w] = False
                if invalidate:
                    c.valid[s][w] = False

    def invalidate(self):
        c = self.c
        for s in range(c.sets):
            for w in range(c.ways):
                c.valid[s][w] = False
                c.dirty[s][w] = False


class LastLevelCache:
    HIT_LATENCY = 2
    BEAT_BYTES = 8

    def __init__(self, dram, counters=None, size: int = 64 * 1024,
                 ways: int = 4, line: int = 64):
        self.c = SetAssocCache(size, ways, line)
        self.dram = dram
        self.counters = counters
        self.mask = 0
        self.full_mask = (1 << ways) - 1
        self.size = size

    # -- configuration

    def allowed_ways(self) -> tuple:
        return tuple(w for w in range(self.c.ways) if not self.mask & (1 << w))

    def set_mask(self, new_mask: int):
        new_mask &= self.full_mask
        newly = new_mask & ~self.mask
        c = self.c
        for w in range(c.ways):
            if not newly & (1 << w):
                continue
            for s in range(c.sets):
                if c.valid[s][w]:
                    if c.dirty[s][w]:
                        self._writeback(s, w)
                    c.valid[s][w] = False
                    c.dirty[s][w] = False
            start = w * c.way_bytes
            c.data[start:start + c.way_bytes] = bytes(c.way_bytes)
        self.mask = new_mask

    def flush_all(self):
        """Write back and invalidate every line in the cache-side ways."""
        c = self.c
        for w in self.allowed_ways():
            for s in range(c.sets):
                if c.valid[s][w]:
                    if c.dirty[s][w]:
                        self._writeback(s, w)
                    c.valid[s][w] = False
                    c.dirty[s][w] = False

    # -- internals

    def _writeback(self, s: int, w: int):
        c = self.c
        off = c.data_off(s, w)
        self.dram.mem_write_block(c.line_addr(s, c.tags[s][w]),
                                  bytes(c.data[off:off + c.line]))
        if self.counters is not None:
            self.counters.llc_writebacks += 1

    def _count(self, hit: bool):
        if self.counters is None:
            return
        if hit:
            self.counters.llc_hits += 1
        else:
            self.counters.llc_misses += 1

    def _ensure_line(self, la: int, fill: bool = True) -> tuple:
        """Return (way, added_cycles), loading the line on a miss."""
        c = self.c
        s, tag = c.split(la)
        w = c.find(s, tag)
        if w is not None:
            self._count(True)
            c.touch(s, w)
            return w, 0
        self._count(False)
        w = c.victim(s, self.allowed_ways())
        if c.valid[s][w] and c.dirty[s][w]:
            self._writeback(s, w)
        cycles = 0
        off = c.data_off(s, w)
        if fill:
            c.data[off:off + c.line] = self.dram.mem_read_block(la, c.line)
            cycles = self.dram.service_cycles(la, c.line, False)
        else:
            c.data[off:off + c.line] = bytes(c.line)
        c.tags[s][w] = tag
        c.valid[s][w] = True
        c.dirty[s][w] = False
        c.touch(s, w)
        return w, cycles

    def _beats(self, n: int) -> int:
        return (n + self.BEAT_BYTES - 1) // self.BEAT_BYTES

    # -- cacheable port (addresses are DRAM offsets)

    def read(self, addr: int, n: int) -> tuple:
        if self.mask == self.full_mask:
            return (self.dram.mem_read_block(addr, n),
                    self.dram.service_cycles(addr, n, False))
        fills = 0
        c = self.c
        out = bytearray()
        for la, lo, ln in _split_lines(addr, n, c.line):
            w, added = self._ensure_line(la)
            fills += added
            off = c.data_off(c.split(la)[0], w) + lo
            out += c.data[off:off + ln]
        # line fills stream through the port, so they hide the beat count
        return bytes(out), self.HIT_LATENCY + max(self._beats(n), fills)

    def write(self, addr: int, data: bytes, free: bool = False) -> int:
        """Write-allocate store. With free=True (victim writeback from an
        upper level) the data still lands but no stall is charged."""
        n = len(data)
        if self.mask == self.full_mask:
            self.dram.mem_write_block(addr, data)
            return 0 if free else self.dram.service_cycles(addr, n, True)
        fills = 0
        c = self.c
        pos = 0
        for la, lo, ln in _split_lines(addr, n, c.line):
            w, added = self._ensure_line(la, fill=ln < c.line)
            fills += added
            s = c.split(la)[0]
            off = c.data_off(s, w) + lo
            c.data[off:off + ln] = data[pos:pos + ln]
            c.dirty[s][w] = True
            pos += ln
        return 0 if free else self.HIT_LATENCY + max(self._beats(n), fills)

    # -- scratchpad window (offsets within the carved-out ways)

    def _window_check(self, off: int, n: int):
        if off < 0 or off + n > self.size:
            raise BusFault(off, "decerr")
        first_way = off // self.c.way_bytes
        last_way = (off + n - 1) // self.c.way_bytes
        for w in range(first_way, last_way + 1):
            if not self.mask & (1 << w):
                raise BusFault(off, "slverr")

    def window_read(self, off: int, n: int) -> tuple:
        self._window_check(off, n)
        return bytes(self.c.data[off:off + n]), self.HIT_LATENCY + self._beats(n)

    def window_write(self, off: int, data: bytes) -> int:
        self._window_check(off, len(data))
        self.c.data[off:off + len(data)] = data
        return self.HIT_LATENCY + self._beats(len(data))


class SpmWindow:
    """Crossbar-facing device exposing the masked ways byte-addressably."""

    def __init__(self, llc: LastLevelCache):
        self.llc = llc

    def service_cycles(self, off: int, size: int, is_write: bool) -> int:
        return self.llc.HIT_LATENCY + self.llc._beats(size)

    def mem_read(self, off: int, size: int) -> int:
        data, _ = self.llc.window_read(off, size)
        return int.from_bytes(data, "little")

    def mem_write(self, off: int, size: int, value: int):
        self.llc.window_write(off, (value & (1 << (8 * size)) - 1).to_bytes(size, "little"))

    def mem_read_block(self, off: int, n: int) -> bytes:
        return self.llc.window_read(off, n)[0]

    def mem_write_block(self, off: int, data: bytes):
        self.llc.window_write(off, data)


class LlcRegs:
    """Register page: SPM_MASK (RW), FLUSH (write-one-to-start, reads as
    zero once done), STATUS (bit 0 = busy)."""

    SPM_MASK = 0x00
    FLUSH = 0x04
    STATUS = 0x08

    def __init__(self, llc: LastLevelCache):
        self.llc = llc

    def reg_read(self, off: int) -> int:
        if off == self.SPM_MASK:
            return self.llc.mask
        if off == self.FLUSH:
            return 0
        if off == self.STATUS:
            return 0  # flush completes within the triggering access
        raise BusFault(off, "slverr")

    def reg_write(self, off: int, value: int):
        if off == self.SPM_MASK:
            self.llc.set_mask(value)
        elif off == self.FLUSH:
            if value & 1:
                self.llc.flush_all()
        elif off == self.STATUS:
            raise BusFault(off, "slverr")
        else:
            raise BusFault(off, "slverr")
