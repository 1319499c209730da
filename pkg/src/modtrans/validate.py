"""Compare two layer-size sequences, positionally or as multisets."""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field


class DiffMode(enum.Enum):
    ORDERED = "ordered"
    MULTISET = "multiset"


@dataclass(frozen=True)
class DiffReport:
    """Outcome of :func:`diff_sizes`.

    In ORDERED mode each mismatch is ``(position, left, right)`` and the
    ``*_only`` lists hold the tail of the longer sequence. In MULTISET mode
    each mismatch is ``(size, left_count, right_count)`` and the ``*_only``
    lists hold the surplus sizes of each side.
    """

    mode: DiffMode
    left_len: int
    right_len: int
    mismatches: tuple[tuple[int, int, int], ...] = ()
    left_only: tuple[int, ...] = ()
    right_only: tuple[int, ...] = ()
    left_names: tuple[str, ...] = field(default=(), compare=False)
    right_names: tuple[str, ...] = field(default=(), compare=False)

    @property
    def is_match(self) -> bool:
        return not (self.mismatches or self.left_only or self.right_only)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "is_match": self.is_match,
            "left_len": self.left_len,
            "right_len": self.right_len,
            "mismatches": [list(m) for m in self.mismatches],
            "left_only": list(self.left_only),
            "right_only": list(self.right_only),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @staticmethod
    def _name(names, pos: int) -> str:
        return names[pos] if pos < len(names) else ""

    def render(self) -> str:
        lines = [f"mode: {self.mode.value}"]
        if self.left_len != self.right_len:
            lines.append(f"length mismatch: left has {self.left_len} layers, right has {self.right_len}")
        if self.mode is DiffMode.ORDERED:
            rows = [(pos, self._name(self.left_names, pos), a, self._name(self.right_names, pos), b)
                    for pos, a, b in self.mismatches]
            lw = max([len("left name"), *(len(r[1]) for r in rows)])
            rw = max([len("right name"), *(len(r[3]) for r in rows)])
            if rows:
                lines.append(f"{'pos':>4}  {'left name':<{lw}}  {'left':>12}  {'right name':<{rw}}  {'right':>12}")
            for pos, ln, a, rn, b in rows:
                lines.append(f"{pos:>4}  {ln:<{lw}}  {a:>12}  {rn:<{rw}}  {b:>12}")
        else:
            if self.mismatches:
                lines.append(f"{'size':>12}  {'left count':>10}  {'right count':>11}")
            for size, a, b in self.mismatches:
                lines.append(f"{size:>12}  {a:>10}  {b:>11}")
        if self.left_only:
            lines.append("only in left: " + " ".join(map(str, self.left_only)))
        if self.right_only:
            lines.append("only in right: " + " ".join(map(str, self.right_only)))
        n = len(self.mismatches)
        lines.append("MATCH" if self.is_match else f"MISMATCH ({n} differing {'positions' if self.mode is DiffMode.ORDERED else 'sizes'})")
        return "\n".join(lines)


def diff_sizes(left, right, mode: DiffMode = DiffMode.ORDERED, left_names=(), right_names=()) -> DiffReport:
    left, right = list(left), list(right)
    if mode is DiffMode.ORDERED:
        common = min(len(left), len(right))
        mismatches = tuple((i, left[i], right[i]) for i in range(common) if left[i] != right[i])
        left_only, right_only = tuple(left[common:]), tuple(right[common:])
    else:
        lc, rc = Counter(left), Counter(right)
        mismatches = tuple((s, lc[s], rc[s]) for s in sorted(lc.keys() | rc.keys()) if lc[s] != rc[s])
        left_only = tuple(sorted((lc - rc).elements()))
        right_only = tuple(sorted((rc - lc).elements()))
    return DiffReport(mode, len(left), len(right), mismatches, left_only, right_only,
                      tuple(left_names), tuple(right_names))
