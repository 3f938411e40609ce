"""Two-symbol Turing machines and numbered registries of them."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional, Sequence, Union

HALT = -1
LEFT, RIGHT = -1, 1


@dataclass(frozen=True)
class Rule:
    write: int
    move: int
    next_state: int  # HALT or a state index


@dataclass(frozen=True)
class TuringMachine:
    """``rules[2 * q + symbol]`` is the transition from state q reading symbol."""

    states: int
    rules: tuple[Rule, ...]

    def __post_init__(self):
        if self.states < 1:
            raise ValueError("a machine needs at least one state")
        if len(self.rules) != 2 * self.states:
            raise ValueError("transition function must be total: 2 rules per state")
        for r in self.rules:
            if r.write not in (0, 1) or r.move not in (LEFT, RIGHT):
                raise ValueError(f"bad rule {r}")
            if r.next_state != HALT and not 0 <= r.next_state < self.states:
                raise ValueError(f"bad next state in {r}")


@dataclass(frozen=True)
class RunResult:
    halted: bool
    steps: int


def tm_run(m: TuringMachine, max_steps: int) -> RunResult:
    """Run from state 0 on a blank tape; each transition is one step.

    Returns halted=True with the number of the step that entered HALT, or
    halted=False with steps = max_steps.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    return _run_cached(m, max_steps)


@lru_cache(maxsize=4096)
def _run_cached(m: TuringMachine, max_steps: int) -> RunResult:
    tape: dict[int, int] = {}
    head, state = 0, 0
    for step in range(1, max_steps + 1):
        r = m.rules[2 * state + tape.get(head, 0)]
        tape[head] = r.write
        head += r.move
        if r.next_state == HALT:
            return RunResult(True, step)
        state = r.next_state
    return RunResult(False, max_steps)


def halting_time(m: TuringMachine, max_steps: int) -> Optional[int]:
    res = tm_run(m, max_steps)
    return res.steps if res.halted else None


# -- standard machines -----------------------------------------------------

def loop_machine() -> TuringMachine:
    """Two states that bounce forever."""
    return TuringMachine(2, (Rule(0, RIGHT, 1), Rule(0, RIGHT, 1), Rule(0, LEFT, 0), Rule(0, LEFT, 0)))


def halt_after(k: int) -> TuringMachine:
    """Walks right through k - 1 states, halting on step k."""
    if k < 1:
        raise ValueError("k >= 1")
    rules = []
    for q in range(k):
        nxt = q + 1 if q + 1 < k else HALT
        rules += [Rule(1, RIGHT, nxt), Rule(1, RIGHT, nxt)]
    return TuringMachine(k, tuple(rules))


# -- registries ---------------------------------------------------------------

def _rule_choices(states: int) -> int:
    return 2 * 2 * (states + 1)


def _decode_rule(c: int, states: int) -> Rule:
    # order: write, move, next (0 .. states-1 then HALT)
    write, rest = divmod(c, 2 * (states + 1))
    move, nxt = divmod(rest, states + 1)
    return Rule(write, LEFT if move == 0 else RIGHT, HALT if nxt == states else nxt)


def enumerate_machine(index: int) -> TuringMachine:
    """The index-th machine (from 1): by number of states, then lexicographically."""
    if index < 1:
        raise ValueError("machine indices start at 1")
    i = index - 1
    s = 1
    while True:
        count = _rule_choices(s) ** (2 * s)
        if i < count:
            break
        i -= count
        s += 1
    base = _rule_choices(s)
    digits = []
    for _ in range(2 * s):
        i, d = divmod(i, base)
        digits.append(d)
    digits.reverse()  # most significant first: entry (0, 0) varies slowest
    return TuringMachine(s, tuple(_decode_rule(d, s) for d in digits))


class Registry:
    """Machine n for every n >= 1: overrides first, then the standard enumeration."""

    def __init__(self, overrides: Optional[Mapping[int, TuringMachine]] = None, name: str = "default"):
        self.overrides = dict(overrides or {})
        self.name = name

    def __getitem__(self, n: int) -> TuringMachine:
        if n < 1:
            raise KeyError(n)
        if n in self.overrides:
            return self.overrides[n]
        return enumerate_machine(n)


def default_registry() -> Registry:
    return Registry()


def sample_registry() -> Registry:
    """Machine 1 loops, machine 2 halts at step 3, machine 3 halts at once."""
    return Registry({1: loop_machine(), 2: halt_after(3), 3: halt_after(1)}, name="test")


def _parse_rule_text(text: str, states: int) -> Rule:
    w, mv, nxt = (t.strip() for t in text.split(","))
    move = {"L": LEFT, "R": RIGHT}.get(mv.upper())
    if move is None:
        raise ValueError(f"move must be L or R, got {mv!r}")
    ns = HALT if nxt.upper() in ("H", "HALT") else int(nxt)
    return Rule(int(w), move, ns)


def machine_from_dict(d: Mapping) -> TuringMachine:
    s = int(d["states"])
    rules = d["rules"]
    out = []
    for q in range(s):
        for sym in (0, 1):
            key = f"{q},{sym}"
            if key not in rules:
                raise ValueError(f"missing rule for {key}")
            out.append(_parse_rule_text(rules[key], s))
    return TuringMachine(s, tuple(out))


def machine_to_dict(m: TuringMachine) -> dict:
    rules = {}
    for q in range(m.states):
        for sym in (0, 1):
            r = m.rules[2 * q + sym]
            nxt = "H" if r.next_state == HALT else str(r.next_state)
            rules[f"{q},{sym}"] = f"{r.write},{'L' if r.move == LEFT else 'R'},{nxt}"
    return {"states": m.states, "rules": rules}


def load_registry(source: Union[str, Mapping]) -> Registry:
    """Registry from ``{"machines": [...]}``: entry i becomes machine i + 1."""
    data = json.loads(source) if isinstance(source, str) else source
    machines = data["machines"]
    return Registry({i + 1: machine_from_dict(m) for i, m in enumerate(machines)}, name="file")


def dump_registry(machines: Sequence[TuringMachine]) -> str:
    return json.dumps({"machines": [machine_to_dict(m) for m in machines]}, indent=2)
