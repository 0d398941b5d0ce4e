"""Reader and writer for the sparse FIS (rule base) and OBS (observation) text formats.

A FIS file is made of ``[System]``, ``[Input<k>]``, ``[Output<k>]`` and
``[Rules]`` sections of ``key=value`` lines. Membership functions are written
as::

    MF1='A1':trimf,[5 10 15]![0 1 0]

where the second bracket lists the membership value at each characteristic
point. ``([0 1 0])`` and a bare ``[0 1 0]`` are accepted on input as well; the
writer always emits the ``!`` form. Text after ``%`` is a comment.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import Diagnostic, DomainError, FisParseError
from .fuzzy import TOL, PiecewiseLinearFuzzySet, validate_cnf

MF_KINDS = ("singlmf", "trimf", "trapmf", "polymf")
_ARITY = {"singlmf": 1, "trimf": 3, "trapmf": 4}
_DEFAULT_PARAMSY = {"singlmf": (1.0,), "trimf": (0.0, 1.0, 0.0), "trapmf": (0.0, 1.0, 1.0, 0.0)}

_SYSTEM_KEYS = {
    "name": "Name",
    "type": "Type",
    "version": "Version",
    "numinputs": "NumInputs",
    "numoutputs": "NumOutputs",
    "numrules": "NumRules",
    "andmethod": "AndMethod",
    "ormethod": "OrMethod",
    "impmethod": "ImpMethod",
    "aggmethod": "AggMethod",
    "defuzzmethod": "DefuzzMethod",
}

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_SECTION_RE = re.compile(r"^\[\s*([A-Za-z]+)\s*(\d*)\s*\]$")
_KEY_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)\s*=\s*(.*)$")
_MF_RE = re.compile(
    r"""^'(?P<label>[^']*)'\s*:\s*'?(?P<kind>[A-Za-z]+)'?\s*,\s*
        \[(?P<params>[^\]]*)\]\s*
        (?:(?P<open>!?\s*[(<]?)\s*\[(?P<paramsy>[^\]]*)\]\s*(?P<close>[)>]?))?\s*$""",
    re.VERBOSE,
)
_RULE_RE = re.compile(
    rf"^(?P<ants>[-\d\s]+),\s*(?P<cons>[-\d\s]+?)\s*\(\s*(?P<w>{_NUM})\s*\)\s*:\s*(?P<conn>\d+)$"
)


@dataclass(frozen=True)
class MembershipDecl:
    label: str
    kind: str
    params: tuple[float, ...]
    paramsy: tuple[float, ...]


@dataclass(frozen=True)
class VariableDecl:
    name: str
    range: tuple[float, float]
    mfs: tuple[MembershipDecl, ...]


@dataclass(frozen=True)
class Rule:
    antecedent_indices: tuple[int, ...]
    consequent_indices: tuple[int, ...]
    weight: float = 1.0
    connective: int = 1

    @property
    def consequent_index(self) -> int:
        return self.consequent_indices[0]


@dataclass(frozen=True)
class FisDocument:
    name: str
    system_type: str
    version: str
    num_inputs: int
    num_outputs: int
    num_rules: int
    and_method: str | None
    or_method: str | None
    imp_method: str | None
    agg_method: str | None
    defuzz_method: str
    inputs: tuple[VariableDecl, ...]
    outputs: tuple[VariableDecl, ...]
    rules: tuple[Rule, ...]
    extra: tuple[tuple[str, str], ...] = field(default=())
    """Unrecognised ``[System]`` keys with their raw values, kept for write-back."""


@dataclass(frozen=True)
class ObsDocument:
    num_inputs: int
    name: str
    observations: tuple[MembershipDecl, ...]


def to_fuzzy_set(decl: MembershipDecl) -> PiecewiseLinearFuzzySet:
    """Zip ``params`` with ``paramsy`` into a breakpoint list.

    Coincident x values are accepted only as a vertical edge at either end of
    the support; anywhere else they are ambiguous and rejected.
    """
    if len(decl.params) != len(decl.paramsy):
        raise DomainError(f"MF {decl.label!r}: {len(decl.params)} params but {len(decl.paramsy)} paramsy")
    pts = list(zip(map(float, decl.params), map(float, decl.paramsy)))
    for i in range(1, len(pts)):
        (x0, m0), (x1, m1) = pts[i - 1], pts[i]
        if x1 < x0 - TOL:
            raise DomainError(f"MF {decl.label!r}: params are not sorted")
        if abs(x1 - x0) <= TOL and abs(m1 - m0) > TOL:
            at_edge = (i == 1 and m0 <= TOL) or (i == len(pts) - 1 and m1 <= TOL)
            if not at_edge:
                raise DomainError(f"MF {decl.label!r}: duplicate x={x1} with conflicting membership values")
    return PiecewiseLinearFuzzySet.from_breakpoints([p[0] for p in pts], [p[1] for p in pts], decl.label)


def _strip_comment(line):
    quote = None
    for i, ch in enumerate(line):
        if quote:
            if ch == quote:
                quote = None
        elif ch in "'\"":
            quote = ch
        elif ch == "%":
            return line[:i]
    return line


def _unquote(value):
    value = value.strip()
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "'\"":
        return value[1:-1]
    return value


def _numbers(text):
    parts = [p for p in re.split(r"[\s,;]+", text.strip()) if p]
    return tuple(float(p) for p in parts)


def _lines(text):
    for lineno, raw in enumerate(text.replace("\r\n", "\n").replace("\r", "\n").split("\n"), start=1):
        line = _strip_comment(raw).strip()
        if line:
            yield lineno, line


def _parse_mf(value, lineno, diags, kind_label="MF"):
    m = _MF_RE.match(value.strip())
    if not m:
        diags.append(Diagnostic(lineno, f"malformed {kind_label} definition {value.strip()!r}"))
        return None
    label, kind = m.group("label"), m.group("kind").lower()
    if kind not in MF_KINDS:
        diags.append(Diagnostic(lineno, f"unknown membership function type {kind!r}"))
        return None
    opener = (m.group("open") or "").replace(" ", "").lstrip("!")
    closer = m.group("close") or ""
    if {"(": ")", "<": ">", "": ""}.get(opener) != closer:
        diags.append(Diagnostic(lineno, "unbalanced brackets around membership values"))
        return None
    try:
        params = _numbers(m.group("params"))
        paramsy = _numbers(m.group("paramsy")) if m.group("paramsy") is not None else None
    except ValueError:
        diags.append(Diagnostic(lineno, f"non-numeric value in {kind_label} {label!r}"))
        return None
    arity = _ARITY.get(kind)
    if arity is not None and len(params) != arity:
        diags.append(Diagnostic(lineno, f"arity mismatch: {kind} needs {arity} points, got {len(params)}"))
        return None
    if kind == "polymf" and len(params) < 2:
        diags.append(Diagnostic(lineno, f"arity mismatch: polymf needs at least 2 points, got {len(params)}"))
        return None
    if paramsy is None:
        if kind == "polymf":
            diags.append(Diagnostic(lineno, f"polymf {label!r} needs explicit membership values"))
            return None
        paramsy = _DEFAULT_PARAMSY[kind]
    if len(paramsy) != len(params):
        diags.append(
            Diagnostic(lineno, f"arity mismatch: {len(params)} points but {len(paramsy)} membership values")
        )
        return None
    decl = MembershipDecl(label, kind, params, paramsy)
    try:
        fset = to_fuzzy_set(decl)
    except DomainError as exc:
        diags.append(Diagnostic(lineno, str(exc)))
        return None
    report = validate_cnf(fset)
    if not report.valid:
        diags.append(Diagnostic(lineno, f"{kind_label} {label!r} is not convex and normal: {report}"))
        return None
    return decl


def _int_value(value, key, lineno, diags):
    try:
        number = float(_unquote(value))
    except ValueError:
        diags.append(Diagnostic(lineno, f"{key} must be an integer, got {value!r}"))
        return None
    if not math.isfinite(number) or number != int(number) or number < 0:
        diags.append(Diagnostic(lineno, f"{key} must be a non-negative integer, got {value!r}"))
        return None
    return int(number)


class _VarBuilder:
    def __init__(self, kind, index, lineno):
        self.kind = kind
        self.index = index
        self.lineno = lineno
        self.name = None
        self.range = None
        self.num_mfs = None
        self.mfs = {}

    def build(self, diags):
        where = f"[{self.kind}{self.index}]"
        ok = True
        if self.name is None:
            diags.append(Diagnostic(self.lineno, f"{where} has no Name"))
            ok = False
        if self.range is None:
            diags.append(Diagnostic(self.lineno, f"{where} has no Range"))
            return None
        lo, hi = self.range
        if not lo < hi:
            diags.append(Diagnostic(self.lineno, f"{where} Range must satisfy lo < hi"))
            ok = False
        keys = sorted(self.mfs)
        if keys != list(range(1, len(keys) + 1)):
            diags.append(Diagnostic(self.lineno, f"{where} MF numbering is not 1..{len(keys)}"))
            ok = False
        if self.num_mfs is None:
            diags.append(Diagnostic(self.lineno, f"{where} has no NumMFs"))
            ok = False
        elif self.num_mfs != len(keys):
            diags.append(
                Diagnostic(self.lineno, f"count mismatch: {where} declares NumMFs={self.num_mfs} but has {len(keys)}")
            )
            ok = False
        for k in keys:
            lineno, decl = self.mfs[k]
            if decl is None:
                ok = False
                continue
            if min(decl.params) < lo - TOL or max(decl.params) > hi + TOL:
                diags.append(Diagnostic(lineno, f"MF {decl.label!r} lies outside the range [{lo:g} {hi:g}]"))
                ok = False
        if not ok:
            return None
        return VariableDecl(self.name, (lo, hi), tuple(self.mfs[k][1] for k in keys))


def parse_fis(text: str) -> FisDocument:
    """Parse and validate FIS text; raises :class:`FisParseError` listing every problem."""
    diags: list[Diagnostic] = []
    system: dict[str, str] = {}
    system_line: dict[str, int] = {}
    extra: list[tuple[str, str]] = []
    inputs: dict[int, _VarBuilder] = {}
    outputs: dict[int, _VarBuilder] = {}
    rules: list[tuple[int, Rule]] = []
    section = None
    current = None
    seen_system = False

    for lineno, line in _lines(text):
        sm = _SECTION_RE.match(line)
        if sm:
            name, number = sm.group(1).lower(), sm.group(2)
            current = None
            if name == "system" and not number:
                section = "system"
                seen_system = True
            elif name in ("input", "output"):
                table = inputs if name == "input" else outputs
                index = int(number) if number else len(table) + 1
                if index in table:
                    diags.append(Diagnostic(lineno, f"duplicate section [{sm.group(1)}{index}]"))
                current = table[index] = _VarBuilder(name.capitalize(), index, lineno)
                section = name
            elif name == "rules" and not number:
                section = "rules"
            else:
                diags.append(Diagnostic(lineno, f"unknown section [{sm.group(1)}{number}]"))
                section = "unknown"
            continue
        if line.startswith("[") and section != "rules":
            diags.append(Diagnostic(lineno, f"malformed section header {line!r}"))
            section = "unknown"
            continue
        if section is None:
            diags.append(Diagnostic(lineno, "content before the first section header"))
            continue
        if section == "unknown":
            continue
        if section == "rules":
            rm = _RULE_RE.match(line)
            if not rm:
                diags.append(Diagnostic(lineno, f"malformed rule {line!r}"))
                continue
            rules.append(
                (
                    lineno,
                    Rule(
                        tuple(int(v) for v in rm.group("ants").split()),
                        tuple(int(v) for v in rm.group("cons").split()),
                        float(rm.group("w")),
                        int(rm.group("conn")),
                    ),
                )
            )
            continue
        km = _KEY_RE.match(line)
        if not km:
            diags.append(Diagnostic(lineno, f"expected key=value, got {line!r}"))
            continue
        key, value = km.group(1), km.group(2).strip()
        if section == "system":
            canonical = _SYSTEM_KEYS.get(key.lower())
            if canonical is None:
                extra.append((key, value))
            elif canonical in system:
                diags.append(Diagnostic(lineno, f"duplicate key {canonical}"))
            else:
                system[canonical] = value
                system_line[canonical] = lineno
            continue
        lk = key.lower()
        if lk == "name":
            current.name = _unquote(value)
        elif lk == "range":
            rng = re.fullmatch(r"\[([^\]]*)\]", value)
            try:
                bounds = _numbers(rng.group(1)) if rng else ()
            except ValueError:
                bounds = ()
            if len(bounds) != 2:
                diags.append(Diagnostic(lineno, f"Range must be [lo hi], got {value!r}"))
            else:
                current.range = bounds
        elif lk == "nummfs":
            current.num_mfs = _int_value(value, "NumMFs", lineno, diags)
        elif re.fullmatch(r"mf\d+", lk):
            k = int(lk[2:])
            if k in current.mfs:
                diags.append(Diagnostic(lineno, f"duplicate MF{k}"))
            current.mfs[k] = (lineno, _parse_mf(value, lineno, diags))
        else:
            diags.append(Diagnostic(lineno, f"unknown key {key!r} in [{current.kind}{current.index}]"))

    if not seen_system:
        diags.append(Diagnostic(0, "missing [System] section"))
    for required in ("Name", "NumInputs", "NumOutputs", "NumRules"):
        if seen_system and required not in system:
            diags.append(Diagnostic(0, f"[System] is missing {required}"))
    counts = {}
    for key in ("NumInputs", "NumOutputs", "NumRules"):
        if key in system:
            counts[key] = _int_value(system[key], key, system_line[key], diags)

    built_inputs = _build_vars(inputs, "Input", diags)
    built_outputs = _build_vars(outputs, "Output", diags)
    if counts.get("NumInputs") is not None and counts["NumInputs"] != len(inputs):
        diags.append(Diagnostic(system_line["NumInputs"], f"count mismatch: NumInputs={counts['NumInputs']} but {len(inputs)} input sections"))
    if counts.get("NumOutputs") is not None and counts["NumOutputs"] != len(outputs):
        diags.append(
            Diagnostic(system_line["NumOutputs"], f"count mismatch: NumOutputs={counts['NumOutputs']} but {len(outputs)} output sections")
        )
    if counts.get("NumRules") is not None and counts["NumRules"] != len(rules):
        diags.append(Diagnostic(system_line["NumRules"], f"count mismatch: NumRules={counts['NumRules']} but {len(rules)} rules"))
    for lineno, rule in rules:
        _check_rule(rule, lineno, inputs, outputs, diags)

    if diags:
        raise FisParseError(diags)
    return FisDocument(
        name=_unquote(system["Name"]),
        system_type=_unquote(system.get("Type", "'sparse'")),
        version=_unquote(system.get("Version", "")),
        num_inputs=counts["NumInputs"],
        num_outputs=counts["NumOutputs"],
        num_rules=counts["NumRules"],
        and_method=_unquote(system["AndMethod"]) if "AndMethod" in system else None,
        or_method=_unquote(system["OrMethod"]) if "OrMethod" in system else None,
        imp_method=_unquote(system["ImpMethod"]) if "ImpMethod" in system else None,
        agg_method=_unquote(system["AggMethod"]) if "AggMethod" in system else None,
        defuzz_method=_unquote(system.get("DefuzzMethod", "'COG'")),
        inputs=built_inputs,
        outputs=built_outputs,
        rules=tuple(r for _, r in rules),
        extra=tuple(extra),
    )


def _build_vars(table, kind, diags):
    indices = sorted(table)
    if indices != list(range(1, len(indices) + 1)):
        diags.append(Diagnostic(0, f"{kind} sections are not numbered 1..{len(indices)}"))
    return tuple(v for v in (table[i].build(diags) for i in indices) if v is not None)


def _check_rule(rule, lineno, inputs, outputs, diags):
    if len(rule.antecedent_indices) != len(inputs):
        diags.append(
            Diagnostic(lineno, f"rule has {len(rule.antecedent_indices)} antecedents for {len(inputs)} inputs")
        )
    if len(rule.consequent_indices) != len(outputs):
        diags.append(
            Diagnostic(lineno, f"rule has {len(rule.consequent_indices)} consequents for {len(outputs)} outputs")
        )
    for side, indices, table in (
        ("antecedent", rule.antecedent_indices, inputs),
        ("consequent", rule.consequent_indices, outputs),
    ):
        for pos, idx in enumerate(indices, start=1):
            var = table.get(pos)
            if var is None:
                continue
            if idx < 0 or idx > len(var.mfs):
                diags.append(Diagnostic(lineno, f"{side} index {idx} does not name an MF of {var.kind.lower()} {pos}"))
    if not 0.0 < rule.weight <= 1.0:
        diags.append(Diagnostic(lineno, f"rule weight {rule.weight:g} outside (0, 1]"))


def parse_obs(text: str) -> ObsDocument:
    """Parse and validate OBS text; raises :class:`FisParseError` listing every problem."""
    diags: list[Diagnostic] = []
    num_inputs = None
    num_line = 0
    name = None
    observations: dict[int, tuple[int, MembershipDecl | None]] = {}
    for lineno, line in _lines(text):
        sm = _SECTION_RE.match(line)
        if sm:
            if sm.group(1).lower() != "observation" or sm.group(2):
                diags.append(Diagnostic(lineno, f"unknown section [{sm.group(1)}{sm.group(2)}]"))
            continue
        km = _KEY_RE.match(line)
        if not km:
            diags.append(Diagnostic(lineno, f"expected key=value, got {line!r}"))
            continue
        key, value = km.group(1).lower(), km.group(2)
        if key == "numinputs":
            num_inputs = _int_value(value, "NumInputs", lineno, diags)
            num_line = lineno
        elif key == "obsname":
            name = _unquote(value)
        elif re.fullmatch(r"obs\d+", key):
            k = int(key[3:])
            if k in observations:
                diags.append(Diagnostic(lineno, f"duplicate OBS{k}"))
            observations[k] = (lineno, _parse_mf(value, lineno, diags, "observation"))
        else:
            diags.append(Diagnostic(lineno, f"unknown key {km.group(1)!r}"))
    if num_inputs is None:
        diags.append(Diagnostic(0, "missing NumInputs"))
    keys = sorted(observations)
    if keys != list(range(1, len(keys) + 1)):
        diags.append(Diagnostic(0, f"observations are not numbered 1..{len(keys)}"))
    if num_inputs is not None and num_inputs != len(keys):
        diags.append(Diagnostic(num_line, f"count mismatch: NumInputs={num_inputs} but {len(keys)} observations"))
    if diags:
        raise FisParseError(diags)
    return ObsDocument(num_inputs, name or "", tuple(observations[k][1] for k in keys))


def split_listing(text: str) -> tuple[str, str]:
    """Separate a combined listing holding both a FIS and an OBS file.

    The OBS part starts at a ``*****`` line (or a ``%OBS FILE%`` marker) and
    owns the ``NumInputs``/``ObsName`` keys, the ``[Observation]`` header and
    the ``OBS<k>`` lines; any later section header hands control back to the
    FIS part.
    """
    fis_lines, obs_lines = [], []
    in_obs = False
    for raw in text.replace("\r\n", "\n").split("\n"):
        stripped = raw.strip()
        if re.fullmatch(r"\*{3,}", stripped):
            in_obs = True
            continue
        if stripped.upper().startswith("%OBS"):
            in_obs = True
            obs_lines.append(raw)
            continue
        if in_obs:
            sm = _SECTION_RE.match(_strip_comment(stripped).strip())
            if sm and sm.group(1).lower() != "observation":
                in_obs = False
            else:
                obs_lines.append(raw)
                continue
        fis_lines.append(raw)
    return "\n".join(fis_lines) + "\n", "\n".join(obs_lines) + "\n"


def _num(x):
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _vec(values):
    return "[" + " ".join(_num(v) for v in values) + "]"


def _mf_text(decl):
    if "'" in decl.label:
        raise DomainError(f"label {decl.label!r} cannot contain a single quote")
    return f"'{decl.label}':{decl.kind},{_vec(decl.params)}!{_vec(decl.paramsy)}"


def serialize_fis(doc: FisDocument) -> str:
    lines = [
        "[System]",
        f"Name='{doc.name}'",
        f"Type='{doc.system_type}'",
        f"Version={doc.version}",
        f"NumInputs={doc.num_inputs}",
        f"NumOutputs={doc.num_outputs}",
        f"NumRules={doc.num_rules}",
    ]
    for key, value in (
        ("AndMethod", doc.and_method),
        ("OrMethod", doc.or_method),
        ("ImpMethod", doc.imp_method),
        ("AggMethod", doc.agg_method),
    ):
        if value is not None:
            lines.append(f"{key}='{value}'")
    lines.append(f"DefuzzMethod='{doc.defuzz_method}'")
    lines.extend(f"{key}={value}" for key, value in doc.extra)
    for kind, variables in (("Input", doc.inputs), ("Output", doc.outputs)):
        for i, var in enumerate(variables, start=1):
            lines += ["", f"[{kind}{i}]", f"Name='{var.name}'", f"Range={_vec(var.range)}", f"NumMFs={len(var.mfs)}"]
            lines += [f"MF{k}={_mf_text(mf)}" for k, mf in enumerate(var.mfs, start=1)]
    lines += ["", "[Rules]"]
    for rule in doc.rules:
        ants = " ".join(str(i) for i in rule.antecedent_indices)
        cons = " ".join(str(i) for i in rule.consequent_indices)
        lines.append(f"{ants}, {cons} ({_num(rule.weight)}) : {rule.connective}")
    return "\n".join(lines) + "\n"


def serialize_obs(doc: ObsDocument) -> str:
    lines = [f"NumInputs={doc.num_inputs}", f"ObsName='{doc.name}'", "[Observation]"]
    lines += [f"OBS{k}={_mf_text(mf)}" for k, mf in enumerate(doc.observations, start=1)]
    return "\n".join(lines) + "\n"


def read_fis(path) -> FisDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_fis(fh.read())


def read_obs(path) -> ObsDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_obs(fh.read())


def write_fis(doc: FisDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_fis(doc))


def write_obs(doc: ObsDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_obs(doc))
