"""OpenQASM 2.0 interchange for the ``u3``/``cx`` dialect.

Export lowers every gate to ``u3`` and ``cx``. Angles are written with
``repr`` so that they parse back to the identical double (at most 17
significant digits). Role assignments travel as ``// role`` comments.
"""
from __future__ import annotations

import re

from . import gates as g
from .circuit import Circuit, Op, lower

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";'


class QasmError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def format_angle(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0"
    s = repr(x)
    return s[:-2] if s.endswith(".0") else s


def export_qasm(circuit: Circuit, reg: str = "q") -> str:
    lines = [HEADER, f"qreg {reg}[{circuit.n_qubits}];"]
    for role, q in circuit.role_map.items():
        lines.append(f"// role {role} {reg}[{q}]")
    for op in lower(circuit).ops:
        if op.gate.name == "CNOT":
            c, t = op.qubits
            lines.append(f"cx {reg}[{c}],{reg}[{t}];")
        else:
            angles = ",".join(format_angle(p) for p in op.gate.params)
            lines.append(f"u3({angles}) {reg}[{op.qubits[0]}];")
    return "\n".join(lines) + "\n"


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_QREG = re.compile(r"qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_U3 = re.compile(r"u3\s*\(([^)]*)\)\s*([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_CX = re.compile(r"cx\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]\s*,\s*([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_ROLE = re.compile(r"//\s*role\s+(\S+)\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]\s*$")


def _angle(tok: str, lineno: int) -> float:
    tok = tok.strip()
    if not re.fullmatch(_NUM, tok):
        raise QasmError(lineno, f"malformed angle {tok!r}")
    return float(tok)


def import_qasm(text: str) -> Circuit:
    n = None
    reg = None
    ops: list[Op] = []
    roles: dict[str, int] = {}
    saw_header = False

    def qubit(name, idx, lineno):
        if name != reg:
            raise QasmError(lineno, f"unknown register {name!r}")
        idx = int(idx)
        if idx >= n:
            raise QasmError(lineno, f"qubit index {idx} outside register of size {n}")
        return idx

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        m = _ROLE.match(line)
        if m:
            roles[m.group(1)] = int(m.group(3))
            continue
        line = line.split("//", 1)[0].strip()
        if not line:
            continue
        if not line.endswith(";"):
            raise QasmError(lineno, f"missing ';' in {line!r}")
        stmt = line[:-1].strip()
        if stmt == "OPENQASM 2.0":
            saw_header = True
            continue
        if not saw_header:
            raise QasmError(lineno, "expected 'OPENQASM 2.0;' header")
        if stmt == 'include "qelib1.inc"':
            continue
        if m := _QREG.match(stmt):
            if reg is not None:
                raise QasmError(lineno, "only one quantum register is supported")
            reg, n = m.group(1), int(m.group(2))
            continue
        keyword = re.match(r"[A-Za-z_]\w*", stmt)
        keyword = keyword.group(0) if keyword else stmt
        if keyword not in ("u3", "cx"):
            raise QasmError(lineno, f"unsupported statement {keyword!r}")
        if reg is None:
            raise QasmError(lineno, f"{keyword} before qreg declaration")
        if m := _U3.match(stmt):
            parts = m.group(1).split(",")
            if len(parts) != 3:
                raise QasmError(lineno, f"u3 takes 3 angles, got {len(parts)}")
            angles = [_angle(p, lineno) for p in parts]
            ops.append(Op(g.U3(*angles), (qubit(m.group(2), m.group(3), lineno),)))
        elif m := _CX.match(stmt):
            c = qubit(m.group(1), m.group(2), lineno)
            t = qubit(m.group(3), m.group(4), lineno)
            if c == t:
                raise QasmError(lineno, "cx control equals target")
            ops.append(Op(g.CNOT, (c, t)))
        else:
            raise QasmError(lineno, f"cannot parse {keyword} statement {stmt!r}")
    if n is None:
        raise QasmError(max(1, len(text.splitlines())), "no qreg declaration")
    return Circuit(n, tuple(ops), roles)
