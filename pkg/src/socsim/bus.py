"""System interconnect: the 64-bit crossbar and the 32-bit register bus.

Devices are duck-typed. A device exposes mem_read/mem_write (and optionally
mem_read_block/mem_write_block for bursts). A device that knows its own
timing provides service_cycles(off, size, is_write) returning the complete
transaction cost; otherwise the crossbar charges region latency plus one
cycle per 8-byte beat.

Bus errors are raised as BusFault with kind "decerr" (nothing mapped there)
or "slverr" (the target refused the access).
"""

from __future__ import annotations

__all__ = ["BusFault", "Region", "SystemBus", "RegBus", "Rom"]

PAGE = 4096
BEAT_BYTES = 8
MAX_BURST = 256 * BEAT_BYTES


class BusFault(Exception):
    def __init__(self, addr: int, kind: str = "decerr"):
        super().__init__(f"{kind} at {addr:#x}")
        self.addr = addr
        self.kind = kind


class Region:
    __slots__ = ("name", "base", "size", "device", "latency")

    def __init__(self, name, base, size, device, latency):
        self.name = name
        self.base = base
        self.size = size
        self.device = device
        self.latency = latency

    @property
    def end(self) -> int:
        return self.base + self.size


class SystemBus:
    """Address-routed crossbar with per-region latency accounting."""

    def __init__(self):
        self.regions: list = []

    def add(self, name: str, base: int, size: int, device, latency: int = 1) -> Region:
        if base % PAGE or size % PAGE or size <= 0:
            raise ValueError(f"region {name}: base/size must be 4 KiB aligned")
        for r in self.regions:
            if base < r.end and r.base < base + size:
                raise ValueError(f"region {name} overlaps {r.name}")
        region = Region(name, base, size, device, latency)
        self.regions.append(region)
        self.regions.sort(key=lambda r: r.base)
        return region

    def find(self, addr: int):
        for r in self.regions:
            if r.base <= addr < r.end:
                return r
        return None

    def _route(self, addr: int, size: int) -> Region:
        r = self.find(addr)
        if r is None:
            raise BusFault(addr, "decerr")
        if addr + size > r.end:
            raise BusFault(addr, "decerr")
        return r

    @staticmethod
    def _service(region: Region, off: int, size: int, is_write: bool) -> int:
        dev = region.device
        if hasattr(dev, "service_cycles"):
            return dev.service_cycles(off, size, is_write)
        return region.latency + (size + BEAT_BYTES - 1) // BEAT_BYTES

    def read(self, addr: int, size: int) -> tuple:
        """Single access of 1/2/4/8 bytes. Returns (value, cycles)."""
        r = self._route(addr, size)
        off = addr - r.base
        try:
            value = r.device.mem_read(off, size)
        except BusFault as e:
            raise BusFault(addr, e.kind) from None
        return value, self._service(r, off, size, False)

    def write(self, addr: int, size: int, value: int) -> int:
        r = self._route(addr, size)
        off = addr - r.base
        try:
            r.device.mem_write(off, size, value)
        except BusFault as e:
            raise BusFault(addr, e.kind) from None
        return self._service(r, off, size, True)

    def _check_burst(self, addr: int, n: int):
        if n <= 0 or n > MAX_BURST:
            raise BusFault(addr, "slverr")
        if (addr // PAGE) != ((addr + n - 1) // PAGE):
            raise BusFault(addr, "slverr")

    def read_block(self, addr: int, n: int) -> tuple:
        """Burst read of up to 256 beats, not crossing a 4 KiB boundary.
        Returns (bytes, cycles)."""
        self._check_burst(addr, n)
        r = self._route(addr, n)
        off = addr - r.base
        dev = r.device
        try:
            if hasattr(dev, "mem_read_block"):
                data = dev.mem_read_block(off, n)
            else:
                data = bytes(dev.mem_read(off + i, 1) for i in range(n))
        except BusFault as e:
            raise BusFault(addr, e.kind) from None
        return data, self._service(r, off, n, False)

    def write_block(self, addr: int, data: bytes) -> int:
        n = len(data)
        self._check_burst(addr, n)
        r = self._route(addr, n)
        off = addr - r.base
        dev = r.device
        try:
            if hasattr(dev, "mem_write_block"):
                dev.mem_write_block(off, data)
            else:
                for i, b in enumerate(data):
                    dev.mem_write(off + i, 1, b)
        except BusFault as e:
            raise BusFault(addr, e.kind) from None
        return self._service(r, off, n, True)

    # -- timing-free access for loaders and the debug port

    def debug_read(self, addr: int, n: int) -> bytes:
        out = bytearray()
        while n:
            r = self._route(addr, 1)
            off = addr - r.base
            chunk = min(n, r.end - addr)
            dev = r.device
            if hasattr(dev, "mem_read_block"):
                out += dev.mem_read_block(off, chunk)
            else:
                out += bytes(dev.mem_read(off + i, 1) for i in range(chunk))
            addr += chunk
            n -= chunk
        return bytes(out)

    def debug_write(self, addr: int, data: bytes):
        pos = 0
        while pos < len(data):
            r = self._route(addr, 1)
            off = addr - r.base
            chunk = min(len(data) - pos, r.end - addr)
            dev = r.device
            piece = data[pos:pos + chunk]
            if hasattr(dev, "mem_write_block"):
                dev.mem_write_block(off, piece)
            else:
                for i, b in enumerate(piece):
                    dev.mem_write(off + i, 1, b)
            addr += chunk
            pos += chunk


class RegBus:
    """32-bit peripheral register bus bridged off the crossbar.

    Offsets are carved into 4 KiB pages, one device per page. Only aligned
    32-bit single accesses are legal; anything else is a slave error. Every
    access costs a fixed 4 cycles end to end.
    """

    CYCLES = 4

    def __init__(self):
        self.pages: dict = {}
        self.page_names: dict = {}

    def add(self, page_off: int, device, name: str = ""):
        if page_off % PAGE:
            raise ValueError("regbus device must sit on a 4 KiB page")
        index = page_off // PAGE
        if index in self.pages:
            raise ValueError(f"regbus page {page_off:#x} already occupied")
        self.pages[index] = device
        self.page_names[index] = name or type(device).__name__

    def service_cycles(self, off: int, size: int, is_write: bool) -> int:
        return self.CYCLES

    def _device(self, off: int, size: int):
        if size != 4 or off % 4:
            raise BusFault(off, "slverr")
        dev = self.pages.get(off // PAGE)
        if dev is None:
            raise BusFault(off, "decerr")
        return dev

    def mem_read(self, off: int, size: int) -> int:
        dev = self._device(off, size)
        return dev.reg_read(off & (PAGE - 1)) & 0xFFFFFFFF

    def mem_write(self, off: int, size: int, value: int):
        dev = self._device(off, size)
        dev.reg_write(off & (PAGE - 1), value & 0xFFFFFFFF)

    def mem_read_block(self, off: int, n: int):
        raise BusFault(off, "slverr")

    def mem_write_block(self, off: int, data: bytes):
        raise BusFault(off, "slverr")


class Rom:
    """Read-only boot memory; writes are slave errors."""

    def __init__(self, size: int, image: bytes = b""):
        if len(image) > size:
            raise ValueError("image larger than rom")
        self.data = bytearray(size)
        self.data[: len(image)] = image

    def mem_read(self, off: int, size: int) -> int:
        if off + size > len(self.data):
            raise BusFault(off, "decerr")
        return int.from_bytes(self.data[off:off + size], "little")

    def mem_write(self, off: int, size: int, value: int):
        raise BusFault(off, "slverr")

    def mem_read_block(self, off: int, n: int) -> bytes:
        if off + n > len(self.data):
            raise BusFault(off, "decerr")
        return bytes(self.data[off:off + n])

    def mem_write_block(self, off: int, data: bytes):
        raise BusFault(off, "slverr")
