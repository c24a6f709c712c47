"""Declarative input format: groups, homs, actions, crossed modules, reps,
and one optional command block.

The format is line-oriented with explicit integer tables and no expression
language, so inputs are bit-reproducible and trivially parseable.  A
statement starts in column 0; indented lines continue it.  ``#`` starts a
comment.  Statements:

    group NAME cyclic N
    group NAME product A B
    group NAME table N  <N*N entries, row-major>
    hom NAME SRC DST  <|SRC| entries>
    action NAME H on G trivial
    action NAME H on G table  <|G| rows of |H| entries: entry[g][h] = g^h>
    xmod NAME G H HOM ACTION
    rep NAME GROUP dim D  <|GROUP|*D*D rationals, element-major, row-major>
    command NAME key=value ...

Every parse or validation failure is reported with its source line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .crossed import CrossedModule, validate
from .groups import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    GroupStructureError,
    direct_product,
    make_cyclic,
    make_table_group,
)
from .groupcoh import ModuleRep, finite_rep

__all__ = ["SpecFile", "SpecError", "parse_spec"]

COMMANDS = ("validate", "nerve", "cohomology", "group-cohomology", "e2-page", "structural")


class SpecError(ValueError):
    """Parse/validation failure; ``errors`` holds 'line N: message' strings."""

    def __init__(self, errors: list[str]):
        super().__init__("\n".join(errors))
        self.errors = errors


@dataclass
class SpecFile:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    homs: dict[str, GroupHom] = field(default_factory=dict)
    actions: dict[str, GroupAction] = field(default_factory=dict)
    xmods: dict[str, CrossedModule] = field(default_factory=dict)
    reps: dict[str, ModuleRep] = field(default_factory=dict)
    command: tuple[str, dict[str, str]] | None = None


def _statements(text: str):
    """Group source lines into (line_number, tokens) logical statements."""
    current: list[str] | None = None
    start = 0
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line[0].isspace():
            if current is None:
                yield n, None  # continuation without a statement
                continue
            current.extend(line.split())
        else:
            if current is not None:
                yield start, current
            current = line.split()
            start = n
    if current is not None:
        yield start, current


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise SpecError([f"line {line}: {what} must be an integer, got {tok!r}"])


def _fraction(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise SpecError([f"line {line}: invalid rational {tok!r}"])


def parse_spec(text: str) -> SpecFile:
    """Parse and validate; raises SpecError listing every line-anchored error."""
    spec = SpecFile()
    errors: list[str] = []

    def resolve(table: dict, name: str, line: int, kind: str):
        if name not in table:
            raise SpecError([f"line {line}: unknown {kind} {name!r}"])
        return table[name]

    for line, toks in _statements(text):
        if toks is None:
            errors.append(f"line {line}: continuation line without a statement")
            continue
        try:
            _parse_statement(spec, line, toks, resolve)
        except SpecError as e:
            errors.extend(e.errors)
        except GroupStructureError as e:
            errors.append(f"line {line}: {e}")
    if errors:
        raise SpecError(errors)
    return spec


def _parse_statement(spec: SpecFile, line: int, toks: list[str], resolve):
    head = toks[0]
    if head == "group":
        if len(toks) < 3:
            raise SpecError([f"line {line}: group needs a name and a constructor"])
        name, kind = toks[1], toks[2]
        if name in spec.groups:
            raise SpecError([f"line {line}: duplicate group {name!r}"])
        if kind == "cyclic":
            if len(toks) != 4:
                raise SpecError([f"line {line}: usage: group NAME cyclic N"])
            spec.groups[name] = make_cyclic(_int(toks[3], line, "order"), name=name)
        elif kind == "product":
            if len(toks) != 5:
                raise SpecError([f"line {line}: usage: group NAME product A B"])
            a = resolve(spec.groups, toks[3], line, "group")
            b = resolve(spec.groups, toks[4], line, "group")
            g = direct_product(a, b)
            spec.groups[name] = FiniteGroup(g.order, g.mul, g.inv, name)
        elif kind == "table":
            if len(toks) < 4:
                raise SpecError([f"line {line}: usage: group NAME table N <entries>"])
            n = _int(toks[3], line, "order")
            entries = toks[4:]
            if len(entries) != n * n:
                raise SpecError(
                    [f"line {line}: table needs {n * n} entries, got {len(entries)}"]
                )
            rows = [
                [_int(entries[r * n + c], line, "table entry") for c in range(n)]
                for r in range(n)
            ]
            spec.groups[name] = make_table_group(rows, name=name)
        else:
            raise SpecError([f"line {line}: unknown group constructor {kind!r}"])
    elif head == "hom":
        if len(toks) < 4:
            raise SpecError([f"line {line}: usage: hom NAME SRC DST <entries>"])
        name, src, dst = toks[1], toks[2], toks[3]
        if name in spec.homs:
            raise SpecError([f"line {line}: duplicate hom {name!r}"])
        source = resolve(spec.groups, src, line, "group")
        target = resolve(spec.groups, dst, line, "group")
        entries = toks[4:]
        if len(entries) != source.order:
            raise SpecError(
                [f"line {line}: hom needs {source.order} entries, got {len(entries)}"]
            )
        table = tuple(_int(t, line, "hom entry") for t in entries)
        spec.homs[name] = GroupHom(source, target, table)
    elif head == "action":
        if len(toks) < 6 or toks[3] != "on":
            raise SpecError([f"line {line}: usage: action NAME H on G trivial|table ..."])
        name, hname, gname, kind = toks[1], toks[2], toks[4], toks[5]
        if name in spec.actions:
            raise SpecError([f"line {line}: duplicate action {name!r}"])
        actor = resolve(spec.groups, hname, line, "group")
        space = resolve(spec.groups, gname, line, "group")
        if kind == "trivial":
            table = tuple((g,) * actor.order for g in range(space.order))
        elif kind == "table":
            entries = toks[6:]
            need = space.order * actor.order
            if len(entries) != need:
                raise SpecError(
                    [f"line {line}: action table needs {need} entries, got {len(entries)}"]
                )
            table = tuple(
                tuple(
                    _int(entries[g * actor.order + h], line, "action entry")
                    for h in range(actor.order)
                )
                for g in range(space.order)
            )
        else:
            raise SpecError([f"line {line}: unknown action kind {kind!r}"])
        spec.actions[name] = GroupAction(actor, space, table)
    elif head == "xmod":
        if len(toks) != 6:
            raise SpecError([f"line {line}: usage: xmod NAME G H HOM ACTION"])
        name = toks[1]
        if name in spec.xmods:
            raise SpecError([f"line {line}: duplicate xmod {name!r}"])
        g = resolve(spec.groups, toks[2], line, "group")
        h = resolve(spec.groups, toks[3], line, "group")
        i = resolve(spec.homs, toks[4], line, "hom")
        action = resolve(spec.actions, toks[5], line, "action")
        cm = CrossedModule(g, h, i, action, name=name)
        report = validate(cm)
        if not report.ok:
            kind, witness = report.violations[0]
            raise SpecError(
                [
                    f"line {line}: xmod {name!r} violates {kind} at {witness}"
                    f" ({len(report.violations)} violations)"
                ]
            )
        spec.xmods[name] = cm
    elif head == "rep":
        if len(toks) < 5 or toks[3] != "dim":
            raise SpecError([f"line {line}: usage: rep NAME GROUP dim D <entries>"])
        name = toks[1]
        if name in spec.reps:
            raise SpecError([f"line {line}: duplicate rep {name!r}"])
        group = resolve(spec.groups, toks[2], line, "group")
        d = _int(toks[4], line, "dimension")
        entries = toks[5:]
        need = group.order * d * d
        if len(entries) != need:
            raise SpecError(
                [f"line {line}: rep needs {need} entries, got {len(entries)}"]
            )
        mats = []
        pos = 0
        for _ in range(group.order):
            rowsm = []
            for _ in range(d):
                rowsm.append([_fraction(entries[pos + c], line) for c in range(d)])
                pos += d
            mats.append(rowsm)
        try:
            spec.reps[name] = finite_rep(group, mats)
        except ValueError as e:
            raise SpecError([f"line {line}: {e}"])
    elif head == "command":
        if spec.command is not None:
            raise SpecError([f"line {line}: only one command block is allowed"])
        if len(toks) < 2 or toks[1] not in COMMANDS:
            raise SpecError(
                [f"line {line}: command must be one of {', '.join(COMMANDS)}"]
            )
        params: dict[str, str] = {}
        for tok in toks[2:]:
            if "=" not in tok:
                raise SpecError([f"line {line}: command parameters are key=value, got {tok!r}"])
            k, v = tok.split("=", 1)
            params[k] = v
        spec.command = (toks[1], params)
    else:
        raise SpecError([f"line {line}: unknown statement {head!r}"])
