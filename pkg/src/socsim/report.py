"""Performance report derived from the kernel counters.

Everything is computed from (counters, cycles, freq_hz); a run of zero cycles
reports zeros rather than dividing by zero. Bandwidth figures are payload
bytes per modeled second on each port.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

from .kernel import Counters


@dataclass
class Report:
    cycles: int
    freq_hz: int
    voltage: float
    modeled_seconds: float
    instret: int
    ipc: float
    fp_ops: int
    mflops: float
    l1i_hits: int
    l1i_misses: int
    l1d_hits: int
    l1d_misses: int
    llc_hits: int
    llc_misses: int
    llc_writebacks: int
    dram_rd_bps: float
    dram_wr_bps: float
    dma_bps: float
    c2c_tx_bps: float
    c2c_rx_bps: float
    uart_bytes_tx: int
    uart_bytes_rx: int
    vga_frames: int
    traps: int
    irqs_taken: int

    def as_dict(self) -> dict:
        return asdict(self)

    def render(self) -> str:
        """Fixed-order human-readable text block (one `key = value` per line)."""
        d = self.as_dict()
        width = max(len(k) for k in d)
        lines = []
        for k, v in d.items():
            if isinstance(v, float):
                lines.append(f"{k:<{width}} = {v:.6g}")
            else:
                lines.append(f"{k:<{width}} = {v}")
        return "\n".join(lines) + "\n"


def build_report(counters: Counters, cycles: int, freq_hz: int, voltage: float = 1.2) -> Report:
    secs = cycles / freq_hz if cycles else 0.0

    def rate(n: int) -> float:
        return n / secs if secs else 0.0

    return Report(
        cycles=cycles,
        freq_hz=freq_hz,
        voltage=voltage,
        modeled_seconds=secs,
        instret=counters.instret,
        ipc=(counters.instret / cycles) if cycles else 0.0,
        fp_ops=counters.fp_ops,
        mflops=rate(counters.fp_ops) / 1e6,
        l1i_hits=counters.l1i_hits,
        l1i_misses=counters.l1i_misses,
        l1d_hits=counters.l1d_hits,
        l1d_misses=counters.l1d_misses,
        llc_hits=counters.llc_hits,
        llc_misses=counters.llc_misses,
        llc_writebacks=counters.llc_writebacks,
        dram_rd_bps=rate(counters.dram_bytes_rd),
        dram_wr_bps=rate(counters.dram_bytes_wr),
        dma_bps=rate(counters.dma_bytes),
        c2c_tx_bps=rate(counters.c2c_bytes_tx),
        c2c_rx_bps=rate(counters.c2c_bytes_rx),
        uart_bytes_tx=counters.uart_bytes_tx,
        uart_bytes_rx=counters.uart_bytes_rx,
        vga_frames=counters.vga_frames,
        traps=counters.traps,
        irqs_taken=counters.irqs_taken,
    )
