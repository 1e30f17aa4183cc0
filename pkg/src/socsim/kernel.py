"""Deterministic event-driven simulation kernel.

Single global clock counted in integer cycles. All models on the SoC share it:
the core is stepped synchronously by the run loop, everything else (DMA beats,
UART shifter, VGA frame pacing, link quanta) registers one-shot events. Event
order is a total order: (due_cycle, sequence number), so two events scheduled
for the same cycle fire in the order they were scheduled and a run is
reproducible regardless of host timing.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field, fields, replace
from typing import Callable, Optional

DEFAULT_FREQ_HZ = 62_000_000
DEFAULT_QUANTUM = 1024

# canonical stop reasons for Kernel.run
STOP_EXIT = "exit"
STOP_MAX_CYCLES = "max_cycles"
STOP_BREAKPOINT = "breakpoint"
STOP_TRAP = "trap"
STOP_IDLE = "idle"
STOP_HALT = "halt"


class SchedulingError(Exception):
    """An event was scheduled for a cycle already in the past."""


@dataclass
class SimClock:
    """Cycle counter plus the frequency used to convert cycles to seconds."""

    freq_hz: int = DEFAULT_FREQ_HZ
    cycle: int = 0

    @property
    def seconds(self) -> float:
        return self.cycle / self.freq_hz


@dataclass
class Counters:
    """Architectural and bandwidth counters, all monotonic.

    Byte counters count payload bytes moved over the named port, in the
    direction named. fp_ops counts arithmetic FP operations (fused forms as
    two); moves, converts and compares do not count.
    """

    instret: int = 0
    traps: int = 0
    irqs_taken: int = 0
    fp_ops: int = 0
    l1i_hits: int = 0
    l1i_misses: int = 0
    l1d_hits: int = 0
    l1d_misses: int = 0
    llc_hits: int = 0
    llc_misses: int = 0
    llc_writebacks: int = 0
    dram_bytes_rd: int = 0
    dram_bytes_wr: int = 0
    dma_bytes: int = 0
    c2c_bytes_tx: int = 0
    c2c_bytes_rx: int = 0
    uart_bytes_tx: int = 0
    uart_bytes_rx: int = 0
    vga_frames: int = 0

    def snapshot(self) -> "Counters":
        return replace(self)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class RunResult:
    reason: str
    cycle: int
    exit_code: Optional[int] = None
    trap_cause: Optional[int] = None
    pc: int = 0


class _Event:
    __slots__ = ("due", "seq", "fn", "alive")

    def __init__(self, due: int, seq: int, fn: Callable[[], None]):
        self.due = due
        self.seq = seq
        self.fn = fn
        self.alive = True

    def __lt__(self, other: "_Event") -> bool:
        return (self.due, self.seq) < (other.due, other.seq)


class Kernel:
    """Owns the clock, the event queue, counters and the trace stream.

    The core is attached after construction (see attach_core); it must expose
    step() -> one of "retired" | "trapped" | "waiting", and integer attributes
    `stall` (memory stall cycles incurred by the step just executed), `pc`,
    and `fatal_cause` (None, or the mcause value of a synchronous trap that
    vectored to an uninstalled handler).
    """

    def __init__(self, freq_hz: int = DEFAULT_FREQ_HZ, quantum: int = DEFAULT_QUANTUM):
        if freq_hz <= 0:
            raise ValueError("freq_hz must be positive")
        if quantum <= 0:
            raise ValueError("quantum must be positive")
        self.clock = SimClock(freq_hz=freq_hz)
        self.quantum = quantum
        self.counters = Counters()
        self._heap: list[_Event] = []
        self._events: dict[int, _Event] = {}
        self._next_id = 0
        self._seq = 0
        # hooks fired once per quantum boundary (external input drains)
        self.quantum_hooks: list[Callable[[], None]] = []
        # callables returning the next cycle at which something external may
        # happen (or None); consulted when the core is in WFI
        self.wake_sources: list[Callable[[], Optional[int]]] = []
        self.core = None
        self.trace_subsystems: set[str] = set()
        self.trace_lines: list[str] = []
        self.trace_limit = 1_000_000
        self._exit_code: Optional[int] = None
        self._halt_requested = False
        self._last_quantum = 0

    # ------------------------------------------------------------------ time

    @property
    def now(self) -> int:
        return self.clock.cycle

    # ---------------------------------------------------------------- events

    def schedule(self, due_cycle: int, fn: Callable[[], None]) -> int:
        """Register fn to run when the clock reaches due_cycle.

        Returns an id usable with cancel(). Scheduling in the past is an
        error; scheduling for the current cycle runs before the next core
        step.
        """
        if due_cycle < self.clock.cycle:
            raise SchedulingError(
                f"event due at {due_cycle} but clock is at {self.clock.cycle}"
            )
        ev = _Event(due_cycle, self._seq, fn)
        self._seq += 1
        eid = self._next_id
        self._next_id += 1
        self._events[eid] = ev
        heapq.heappush(self._heap, ev)
        return eid

    def schedule_in(self, delay: int, fn: Callable[[], None]) -> int:
        return self.schedule(self.clock.cycle + delay, fn)

    def cancel(self, event_id: int) -> bool:
        """Cancel a pending event. Returns False if it already fired."""
        ev = self._events.pop(event_id, None)
        if ev is None or not ev.alive:
            return False
        ev.alive = False
        return True

    def _fire_due(self) -> None:
        while self._heap and self._heap[0].due <= self.clock.cycle:
            ev = heapq.heappop(self._heap)
            if not ev.alive:
                continue
            ev.alive = False
            # drop the id mapping lazily; ids are never reused
            ev.fn()

    def _next_event_cycle(self) -> Optional[int]:
        while self._heap and not self._heap[0].alive:
            heapq.heappop(self._heap)
        return self._heap[0].due if self._heap else None

    # ----------------------------------------------------------------- trace

    def trace_enabled(self, subsystem: str) -> bool:
        return subsystem in self.trace_subsystems

    def trace(self, kind: str, **kv) -> None:
        """Emit one trace line if the kind's subsystem is enabled.

        kind is "<subsystem>.<event>"; values are rendered with str(), so
        callers format addresses as hex strings themselves.
        """
        sub = kind.split(".", 1)[0]
        if sub not in self.trace_subsystems:
            return
        if len(self.trace_lines) >= self.trace_limit:
            return
        parts = [f"cycle={self.clock.cycle}", f"kind={kind}"]
        parts += [f"{k}={v}" for k, v in kv.items()]
        self.trace_lines.append(" ".join(parts))

    # ------------------------------------------------------------- execution

    def attach_core(self, core) -> None:
        self.core = core

    def request_exit(self, code: int) -> None:
        """Called by the sim-exit device; stops the run loop after this step."""
        self._exit_code = code & 0xFFFFFFFF

    def request_halt(self) -> None:
        """Debug halt: stop the run loop before the next core step."""
        self._halt_requested = True

    def _quantum_boundary(self) -> None:
        q = self.clock.cycle // self.quantum
        if q > self._last_quantum:
            self._last_quantum = q
            for fn in self.quantum_hooks:
                fn()

    def _advance_to(self, cycle: int) -> None:
        if cycle < self.clock.cycle:
            raise SchedulingError("clock cannot move backwards")
        self.clock.cycle = cycle
        self._fire_due()
        self._quantum_boundary()

    def pump(self, done: Callable[[], bool], limit_cycles: int = 50_000_000) -> None:
        """Advance time without stepping the core until done() is true.

        Used while the core (or DMA) is blocked on a split transaction, e.g.
        a load through the C2C window: events and quantum exchanges keep
        running so the remote response can arrive at a deterministic cycle.
        """
        start = self.clock.cycle
        while not done():
            if self.clock.cycle - start > limit_cycles:
                raise RuntimeError("pump exceeded cycle limit; blocked transaction never completed")
            nxt = self._next_event_cycle()
            boundary = (self.clock.cycle // self.quantum + 1) * self.quantum
            target = boundary if nxt is None else min(nxt, boundary)
            self._advance_to(target)

    def run(
        self,
        max_cycles: int = 0,
        breakpoints: Optional[set] = None,
        max_instructions: int = 0,
    ) -> RunResult:
        """Run until an exit, a fatal trap, a breakpoint, idle, or a budget.

        max_cycles/max_instructions of 0 mean unbounded. Each core step costs
        1 cycle plus whatever stall cycles the memory system reported for it.
        """
        if self.core is None:
            raise RuntimeError("no core attached")
        bps = breakpoints or set()
        self._halt_requested = False
        core = self.core
        cycle_limit = self.clock.cycle + max_cycles if max_cycles else None
        instr_limit = self.counters.instret + max_instructions if max_instructions else None
        # a breakpoint at the resume pc must not re-fire before the first step
        stepped = False

        while True:
            self._fire_due()
            self._quantum_boundary()
            if self._exit_code is not None:
                code, self._exit_code = self._exit_code, None
                return RunResult(STOP_EXIT, self.clock.cycle, exit_code=code, pc=core.pc)
            if self._halt_requested:
                self._halt_requested = False
                return RunResult(STOP_HALT, self.clock.cycle, pc=core.pc)
            if cycle_limit is not None and self.clock.cycle >= cycle_limit:
                return RunResult(STOP_MAX_CYCLES, self.clock.cycle, pc=core.pc)
            if instr_limit is not None and self.counters.instret >= instr_limit:
                return RunResult(STOP_MAX_CYCLES, self.clock.cycle, pc=core.pc)
            if stepped and core.pc in bps:
                return RunResult(STOP_BREAKPOINT, self.clock.cycle, pc=core.pc)

            outcome = core.step()
            stepped = True

            if outcome == "waiting":
                # WFI with nothing pending: advance to the next moment
                # anything could change rather than spinning.
                candidates = [c for c in (self._next_event_cycle(),) if c is not None]
                for src in self.wake_sources:
                    c = src()
                    if c is not None and c > self.clock.cycle:
                        candidates.append(c)
                boundary = (self.clock.cycle // self.quantum + 1) * self.quantum
                if self.quantum_hooks:
                    candidates.append(boundary)
                if cycle_limit is not None:
                    candidates.append(cycle_limit)
                if not candidates:
                    return RunResult(STOP_IDLE, self.clock.cycle, pc=core.pc)
                self._advance_to(min(candidates))
                continue

            self.clock.cycle += 1 + core.stall
            if outcome == "trapped" and core.fatal_cause is not None:
                cause = core.fatal_cause
                core.fatal_cause = None
                self._fire_due()
                return RunResult(STOP_TRAP, self.clock.cycle, trap_cause=cause, pc=core.pc)

    def step_instructions(self, n: int) -> RunResult:
        """Debug single-step: run at most n core steps (retired or trapped)."""
        if self.core is None:
            raise RuntimeError("no core attached")
        core = self.core
        done = 0
        while done < n:
            self._fire_due()
            self._quantum_boundary()
            if self._exit_code is not None:
                code, self._exit_code = self._exit_code, None
                return RunResult(STOP_EXIT, self.clock.cycle, exit_code=code, pc=core.pc)
            outcome = core.step()
            if outcome == "waiting":
                res = RunResult(STOP_IDLE, self.clock.cycle, pc=core.pc)
                return res
            self.clock.cycle += 1 + core.stall
            done += 1
            if outcome == "trapped" and core.fatal_cause is not None:
                cause = core.fatal_cause
                core.fatal_cause = None
                return RunResult(STOP_TRAP, self.clock.cycle, trap_cause=cause, pc=core.pc)
        return RunResult(STOP_HALT, self.clock.cycle, pc=core.pc)
