"""Verification results: single verdicts and multi-check transcripts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import VerificationFailed


def plain(value):
    """Recursively convert numpy scalars and arrays to builtins, for stable printing."""
    if isinstance(value, tuple):
        return tuple(plain(v) for v in value)
    if isinstance(value, list):
        return [plain(v) for v in value]
    if hasattr(value, "tolist"):
        return value.tolist()
    return value


@dataclass(frozen=True)
class Verdict:
    """A boolean answer with an optional witness explaining a ``False``."""

    ok: bool
    witness: object = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Entry:
    check: str
    ok: bool
    witness: object = None
    note: str = ""


@dataclass
class Transcript:
    subject: str
    entries: list[Entry] = field(default_factory=list)

    def record(self, check: str, ok: bool, witness: object = None, note: str = "") -> bool:
        self.entries.append(Entry(check, bool(ok), None if ok else witness, note))
        return bool(ok)

    def note(self, check: str, note: str) -> None:
        self.entries.append(Entry(check, True, None, note))

    def extend(self, other: "Transcript", prefix: str = "") -> None:
        for e in other.entries:
            self.entries.append(Entry(prefix + e.check, e.ok, e.witness, e.note))

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> list[Entry]:
        return [e for e in self.entries if not e.ok]

    def raise_if_failed(self) -> "Transcript":
        bad = self.failures()
        if bad:
            e = bad[0]
            raise VerificationFailed(f"{self.subject}: {e.check} failed", (e.witness,))
        return self

    def lines(self, witnesses: bool = True) -> list[str]:
        out = []
        for e in self.entries:
            line = f"{'PASS' if e.ok else 'FAIL'} {self.subject} {e.check}"
            if e.note:
                line += f" [{e.note}]"
            if witnesses and not e.ok and e.witness is not None:
                line += f" witness={plain(e.witness)!r}"
            out.append(line)
        return out

    def __bool__(self) -> bool:
        return self.ok
