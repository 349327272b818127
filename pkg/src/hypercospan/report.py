"""Line-oriented PASS/FAIL reports shared by the axiom and equivalence suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    title: str = ""
    seed: int | None = None
    # (name, context) -> [passed, failed, first failure detail]
    _results: dict[tuple[str, str], list] = field(default_factory=dict)

    def record(self, name: str, context: str, ok: bool, detail: str = "") -> None:
        entry = self._results.setdefault((name, context), [0, 0, ""])
        if ok:
            entry[0] += 1
        else:
            entry[1] += 1
            if not entry[2]:
                entry[2] = detail

    def check(self, name: str, context: str, thunk) -> bool:
        """Run ``thunk`` (returning bool); exceptions count as failures."""
        try:
            ok = bool(thunk())
            detail = "" if ok else "equation does not hold"
        except Exception as e:  # a broken instance must not abort the suite
            ok, detail = False, f"{type(e).__name__}: {e}"
        self.record(name, context, ok, detail)
        return ok

    def merge(self, other: Report) -> None:
        for key, (p, f, d) in other._results.items():
            entry = self._results.setdefault(key, [0, 0, ""])
            entry[0] += p
            entry[1] += f
            entry[2] = entry[2] or d

    @property
    def ok(self) -> bool:
        return all(f == 0 for _, f, _ in self._results.values())

    def failures(self) -> list[tuple[str, str, str]]:
        return [(n, c, d) for (n, c), (_, f, d) in self._results.items() if f]

    def names(self) -> set[str]:
        return {n for n, _ in self._results}

    def lines(self) -> list[str]:
        out = []
        for (name, context), (_, failed, detail) in self._results.items():
            status = "FAIL" if failed else "PASS"
            line = f"{status} {name} {context}"
            if failed and detail:
                line += f"  # {detail}"
            out.append(line)
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())
