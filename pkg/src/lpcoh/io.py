"""JSON algebra files and classification reports.

Exact quantities travel as rational strings (``"3/2"``), never floats.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .classifier import Classification
from .liealg import LieAlgebra
from .rational import fraction_str

REPORT_SCHEMA = "lpcoh.report/1"
ALGEBRA_SCHEMA = "lpcoh.algebra/1"


class ParseError(ValueError):
    pass


def _rational(text: Any, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"{where}: coefficient must be an integer or a rational string, got {text!r}")
    try:
        return Fraction(text.strip()) if isinstance(text, str) else Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: bad rational {text!r}") from exc


@dataclass(frozen=True)
class AlgebraFile:
    name: str
    dim: int
    basis: tuple[str, ...]
    brackets: tuple[tuple[int, int, int, Fraction], ...]  # 1-based (i, j, k, coef)
    expected: dict | None = field(default=None, compare=False)

    def to_algebra(self) -> LieAlgebra:
        table: dict = {}
        for i, j, k, coef in self.brackets:
            table.setdefault((i - 1, j - 1), {})[k - 1] = coef
        return LieAlgebra.from_table(self.dim, table, names=self.basis, name=self.name)

    def to_dict(self) -> dict:
        d = {
            "schema": ALGEBRA_SCHEMA,
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis),
            "brackets": [{"i": i, "j": j, "k": k, "coef": fraction_str(c)} for i, j, k, c in self.brackets],
        }
        if self.expected is not None:
            d["expected"] = self.expected
        return d


def algebra_file_from_dict(data: Any) -> AlgebraFile:
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    try:
        dim = data["dim"]
        entries = data["brackets"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from exc
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError("dim must be a positive integer")
    basis = data.get("basis") or [f"e{i + 1}" for i in range(dim)]
    if len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise ParseError("basis must list one string label per dimension")
    if not isinstance(entries, list):
        raise ParseError("brackets must be a list")
    out = []
    for n, rec in enumerate(entries):
        where = f"brackets[{n}]"
        if not isinstance(rec, dict):
            raise ParseError(f"{where}: expected an object")
        try:
            i, j, k = rec["i"], rec["j"], rec["k"]
        except KeyError as exc:
            raise ParseError(f"{where}: missing {exc.args[0]!r}") from exc
        for idx in (i, j, k):
            if isinstance(idx, bool) or not isinstance(idx, int) or not 1 <= idx <= dim:
                raise ParseError(f"{where}: index {idx!r} outside 1..{dim}")
        out.append((i, j, k, _rational(rec.get("coef", "1"), where)))
    expected = data.get("expected")
    return AlgebraFile(str(data.get("name", "")), dim, tuple(basis), tuple(out), expected)


def load_algebra_file(path: str | Path) -> AlgebraFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return algebra_file_from_dict(data)


def algebra_file_from_algebra(alg: LieAlgebra, expected: dict | None = None) -> AlgebraFile:
    recs = []
    for (i, j), coeffs in sorted(alg.table().items()):
        for k, c in sorted(coeffs.items()):
            recs.append((i + 1, j + 1, k + 1, c))
    return AlgebraFile(alg.name, alg.dim, alg.basis_names, tuple(recs), expected)


def _interval(iv) -> dict | None:
    if iv is None:
        return None
    return {"lo": fraction_str(iv[0]), "hi": fraction_str(iv[1])}


def classification_dict(c: Classification) -> dict:
    return {
        "verdict": c.verdict,
        "exponent": _interval(c.exponent),
        "statements": [
            {"space": s.space, "p_range": list(s.p_range), "vanishes": s.vanishes, "note": s.note,
             "text": s.render()}
            for s in c.statements
        ],
        "provenance": c.provenance,
    }


def spectral_dict(c: Classification) -> dict | None:
    if c.spectral is None:
        return None
    r = c.spectral
    return {
        "xi0": [fraction_str(x) for x in c.xi0],
        "char_poly": c.char_poly.to_strings(),
        "count_positive": r.count_positive,
        "count_zero": r.count_zero,
        "count_negative": r.count_negative,
        "min_real_part": _interval(r.min_positive_real_part),
        "sum_real_parts": fraction_str(r.sum_real_parts),
        "method": r.method,
    }


@dataclass
class Report:
    schema: str
    tool_version: str
    input: dict
    classification: dict
    spectral: dict | None
    timing: dict | None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        if d.get("schema") != REPORT_SCHEMA:
            raise ParseError(f"unsupported report schema {d.get('schema')!r}")
        return cls(d["schema"], d["tool_version"], d["input"], d["classification"], d["spectral"], d["timing"])

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        c = self.classification
        lines = [f"algebra: {self.input.get('name') or '(unnamed)'} (dim {self.input['dim']})"]
        lines.append("basis: " + " ".join(self.input["basis"]))
        for b in self.input["brackets"]:
            lines.append(f"  [{b['i']}, {b['j']}] -> {b['coef']} * e{b['k']}")
        if self.input.get("expected") is not None:
            lines.append("expected: " + json.dumps(self.input["expected"], sort_keys=True))
        lines.append(f"verdict: {c['verdict']}")
        if c["exponent"] is not None:
            lines.append(f"exponent: [{c['exponent']['lo']}, {c['exponent']['hi']}]")
        for s in c["statements"]:
            lines.append(f"  {s['text']}")
        lines.append("provenance: " + json.dumps(c["provenance"], sort_keys=True))
        if self.spectral is not None:
            s = self.spectral
            lines.append(f"xi0: ({', '.join(s['xi0'])})")
            lines.append(f"char_poly (ascending): {' '.join(s['char_poly'])}")
            lines.append(f"real parts: +{s['count_positive']} 0:{s['count_zero']} -{s['count_negative']}"
                         f" via {s['method']}")
            if s["min_real_part"] is not None:
                lines.append(f"min real part: [{s['min_real_part']['lo']}, {s['min_real_part']['hi']}]")
            lines.append(f"sum of real parts: {s['sum_real_parts']}")
        if self.timing is not None:
            lines.append(f"seconds: {self.timing['seconds']}")
        lines.append(f"tool: lpcoh {self.tool_version} ({self.schema})")
        return "\n".join(lines) + "\n"


def build_report(afile: AlgebraFile, c: Classification, seconds: float | None) -> Report:
    return Report(
        REPORT_SCHEMA,
        __version__,
        afile.to_dict(),
        classification_dict(c),
        spectral_dict(c),
        None if seconds is None else {"seconds": round(seconds, 6)},
    )
