"""Classical C-not cloning/deletion and randomized deletion on bit registers.

A register is a sequence of ``(original, copy)`` pairs plus one register-wide
``empty_flag`` bit marking that the copy slots were randomized by
R-deletion and are free for reuse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import ParameterError, PreconditionError
from .rng import RngStream


def _bit(value) -> int:
    if value not in (0, 1) or isinstance(value, float):
        raise ParameterError(f"not a bit: {value!r}")
    return int(value)


class BitPair(NamedTuple):
    first: int
    second: int

    @classmethod
    def of(cls, first, second) -> "BitPair":
        return cls(_bit(first), _bit(second))


@dataclass(frozen=True)
class LabeledRegister:
    pairs: tuple[BitPair, ...] = ()
    empty_flag: int = 0

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(BitPair.of(*p) for p in self.pairs))
        object.__setattr__(self, "empty_flag", _bit(self.empty_flag))

    @classmethod
    def from_bits(cls, pairs: Iterable[tuple[int, int]], empty_flag: int = 0) -> "LabeledRegister":
        return cls(tuple(pairs), empty_flag)

    @property
    def firsts(self) -> tuple[int, ...]:
        return tuple(p.first for p in self.pairs)

    @property
    def seconds(self) -> tuple[int, ...]:
        return tuple(p.second for p in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def cnot_pair(p: BitPair) -> BitPair:
    """Flip the second bit iff the first is 1."""
    return BitPair(p.first, p.second ^ p.first)


def truth_table() -> list[tuple[BitPair, BitPair]]:
    return [(BitPair(a, b), cnot_pair(BitPair(a, b))) for a in (0, 1) for b in (0, 1)]


def _require_identical(reg: LabeledRegister, op: str) -> None:
    for i, p in enumerate(reg.pairs):
        if p.first != p.second:
            raise PreconditionError(f"{op}: pair {i} = {tuple(p)} is not an identical pair")


def clone_sequence(reg: LabeledRegister) -> LabeledRegister:
    """C-not cloning onto a blank register (every copy slot 0)."""
    for i, p in enumerate(reg.pairs):
        if p.second != 0:
            raise PreconditionError(f"clone: pair {i} = {tuple(p)} has a non-blank copy slot")
    return LabeledRegister(tuple(cnot_pair(p) for p in reg.pairs), empty_flag=0)


def cnot_delete_sequence(reg: LabeledRegister) -> LabeledRegister:
    """C-not deletion of identical pairs back to the all-zero blank.

    The empty flag is left as it was; an all-zero copy slot needs no label.
    """
    _require_identical(reg, "delete")
    return LabeledRegister(tuple(cnot_pair(p) for p in reg.pairs), empty_flag=reg.empty_flag)


def r_delete_classical(reg: LabeledRegister, rng: RngStream) -> LabeledRegister:
    """Replace every copy slot with an independent fair bit and label the register empty."""
    _require_identical(reg, "rdelete")
    noise = rng.bits(len(reg.pairs))
    pairs = tuple(BitPair(p.first, int(b)) for p, b in zip(reg.pairs, noise))
    return LabeledRegister(pairs, empty_flag=1)


def r_clone_classical(p: BitPair) -> BitPair:
    """Overwrite the second bit with the first, whatever the second holds."""
    return BitPair(p.first, p.first)


def r_clone_register(reg: LabeledRegister) -> LabeledRegister:
    return LabeledRegister(tuple(r_clone_classical(p) for p in reg.pairs), empty_flag=0)


def format_register(reg: LabeledRegister) -> str:
    lines = [f"empty_flag: {reg.empty_flag}"]
    lines.extend(f"{p.first} {p.second}" for p in reg.pairs)
    return "\n".join(lines) + "\n"


def parse_register(text: str) -> LabeledRegister:
    """Parse the ``empty_flag: 0|1`` header followed by ``b1 b2`` lines."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParameterError("register text is empty (missing 'empty_flag:' header)")
    key, _, val = lines[0].partition(":")
    if key.strip() != "empty_flag" or val.strip() not in ("0", "1"):
        raise ParameterError(f"bad register header {lines[0]!r}")
    pairs = []
    for n, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2 or any(x not in ("0", "1") for x in parts):
            raise ParameterError(f"register line {n}: expected 'b1 b2', got {ln!r}")
        pairs.append(BitPair(int(parts[0]), int(parts[1])))
    return LabeledRegister(tuple(pairs), int(val.strip()))
