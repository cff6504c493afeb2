"""Insertion/deletion channel simulation and nearest-codeword decoding.

Randomness comes from :class:`random.Random` (Mersenne Twister) seeded per
trace; a trace records its seed so it can be replayed exactly.

A code "corrects t edits" here means unique nearest-codeword decoding for
every script of at most ``t`` insertions plus deletions, which is guaranteed
whenever ``2t < d(C)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, CodeError
from .gf import FieldElement
from .lincode import HAMMING_BUDGET, Codeword, LinearCode, codeword_block, encode, iter_codeword_blocks

AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class EditEvent:
    kind: Literal["insert", "delete"]
    position: int
    symbol: FieldElement | None = None

    def __post_init__(self):
        if self.kind not in ("insert", "delete"):
            raise ValueError(f"unknown edit kind {self.kind!r}")
        if self.kind == "insert" and self.symbol is None:
            raise ValueError("insert events need a symbol")


EditScript = tuple[EditEvent, ...]


def apply_edits(word: Sequence, script: Sequence[EditEvent]) -> tuple:
    """Apply events left to right; positions refer to the word as it is at that moment."""
    out = list(word)
    for ev in script:
        if ev.kind == "delete":
            if not 0 <= ev.position < len(out):
                raise IndexError(f"delete position {ev.position} out of range for length {len(out)}")
            del out[ev.position]
        else:
            if not 0 <= ev.position <= len(out):
                raise IndexError(f"insert position {ev.position} out of range for length {len(out)}")
            out.insert(ev.position, ev.symbol)
    return tuple(out)


@dataclass
class ChannelTrace:
    sent: Codeword
    script: EditScript
    received: tuple[FieldElement, ...]
    seed: int | None = None
    decoded: Codeword | str | None = None
    success: bool | None = None

    @property
    def inserts(self) -> int:
        return sum(ev.kind == "insert" for ev in self.script)

    @property
    def deletes(self) -> int:
        return sum(ev.kind == "delete" for ev in self.script)


def random_channel(word: Sequence[FieldElement], t_ins: int, t_del: int, seed: int) -> ChannelTrace:
    """Apply ``t_ins`` insertions and ``t_del`` deletions at uniformly random places.

    The order of event kinds is random, except that a delete is never drawn
    while the word is empty.
    """
    word = tuple(word)
    if t_ins < 0 or t_del < 0:
        raise ValueError("edit counts must be nonnegative")
    if t_del > len(word) + t_ins:
        raise ValueError(f"cannot delete {t_del} symbols from length {len(word)} with {t_ins} insertions")
    if not word and t_ins:
        raise ValueError("cannot draw insertion symbols for an empty word without a field")
    spec = word[0].spec if word else None
    rng = random.Random(seed)
    cur = list(word)
    events = []
    ins_left, del_left = t_ins, t_del
    while ins_left or del_left:
        # del_left <= len(cur) + ins_left holds throughout, so an empty word always has an insert left
        must_insert = del_left == 0 or not cur
        if must_insert or (ins_left and rng.randrange(ins_left + del_left) < ins_left):
            pos = rng.randrange(len(cur) + 1)
            sym = FieldElement(spec, rng.randrange(spec.q))
            cur.insert(pos, sym)
            events.append(EditEvent("insert", pos, sym))
            ins_left -= 1
        else:
            pos = rng.randrange(len(cur))
            del cur[pos]
            events.append(EditEvent("delete", pos))
            del_left -= 1
    return ChannelTrace(sent=word, script=tuple(events), received=tuple(cur), seed=seed)


def _nearest(code: LinearCode, received_list: list[tuple], budget: int) -> list[Codeword | str]:
    if code.size > budget:
        raise BudgetExceeded(f"q^k = {code.size} codewords exceed the decoding budget of {budget}")
    n = code.n
    spec = code.spec
    targets = [np.array([spec.encode(x) for x in r], dtype=np.int32) for r in received_list]
    best = [None] * len(targets)   # (distance, index, tie_count)
    for lo, blk in iter_codeword_blocks(code):
        for t, r in enumerate(targets):
            dist = len(r) + n - 2 * kernels.lcs_many(r, blk).astype(np.int64)
            dmin = int(dist.min())
            hits = np.flatnonzero(dist == dmin)
            cur = best[t]
            if cur is None or dmin < cur[0]:
                best[t] = (dmin, lo + int(hits[0]), len(hits))
            elif dmin == cur[0]:
                best[t] = (dmin, cur[1], cur[2] + len(hits))
    out = []
    for d, idx, ties in best:
        if ties > 1:
            out.append(AMBIGUOUS)
        else:
            out.append(tuple(FieldElement(spec, int(v)) for v in _word_at(code, idx)))
    return out


def _word_at(code: LinearCode, index: int) -> np.ndarray:
    return codeword_block(code, index, index + 1)[0]


def ml_decode(code: LinearCode, received: Sequence[FieldElement], budget: int = HAMMING_BUDGET) -> Codeword | str:
    """Nearest codeword in insdel distance, or ``AMBIGUOUS`` when several tie."""
    return _nearest(code, [tuple(received)], budget)[0]


def decode_traces(code: LinearCode, traces: list[ChannelTrace], budget: int = HAMMING_BUDGET) -> list[ChannelTrace]:
    """Fill ``decoded``/``success`` for every trace with one pass over the code."""
    if not traces:
        return traces
    decoded = _nearest(code, [t.received for t in traces], budget)
    for tr, dec in zip(traces, decoded):
        tr.decoded = dec
        tr.success = dec != AMBIGUOUS and tuple(dec) == tuple(tr.sent)
    return traces


def random_codeword(code: LinearCode, rng: random.Random) -> Codeword:
    return encode(code, [rng.randrange(code.spec.q) for _ in range(code.k)])


def simulate(code: LinearCode, t_ins: int, t_del: int, trials: int, seed: int,
             budget: int = HAMMING_BUDGET) -> list[ChannelTrace]:
    """``trials`` random codewords through a channel with fixed insertion/deletion counts."""
    rng = random.Random(seed)
    traces = []
    for _ in range(trials):
        sent = random_codeword(code, rng)
        traces.append(random_channel(sent, t_ins, t_del, rng.getrandbits(32)))
    return decode_traces(code, traces, budget)


@dataclass
class ExperimentResult:
    t: int
    trials: int
    successes: int
    traces: list[ChannelTrace] = field(default_factory=list)

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0


def correction_experiment(code: LinearCode, t: int, trials: int, seed: int,
                          budget: int = HAMMING_BUDGET) -> ExperimentResult:
    """Decode ``trials`` random transmissions, each hit by ``t`` edits in a random ins/del split."""
    if t < 0 or trials < 0:
        raise CodeError("t and trials must be nonnegative")
    rng = random.Random(seed)
    traces = []
    for _ in range(trials):
        sent = random_codeword(code, rng)
        t_del = rng.randint(0, min(t, code.n))
        traces.append(random_channel(sent, t - t_del, t_del, rng.getrandbits(32)))
    decode_traces(code, traces, budget)
    return ExperimentResult(t, trials, sum(bool(tr.success) for tr in traces), traces)

