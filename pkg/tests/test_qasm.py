import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from centralspin import gates as g
from centralspin.circuit import Circuit, Op, lower, unitary_of
from centralspin.harness import compose_circuit
from centralspin.qasm import QasmError, export_qasm, format_angle, import_qasm
from centralspin.states import ExcitedCentral, ThreePES, TwoPES
from centralspin.topology import default_topology


def test_hadamard_line():
    text = export_qasm(Circuit(1, (Op(g.H, (0,)),)))
    assert "u3(1.5707963267948966,0,3.141592653589793) q[0];" in text
    assert text.startswith("OPENQASM 2.0;\n")
    assert "qreg q[1];" in text


def test_swap_lowered_to_three_cx():
    text = export_qasm(Circuit(2, (Op(g.SWAP, (0, 1)),)))
    cx = [line for line in text.splitlines() if line.startswith("cx")]
    assert cx == ["cx q[0],q[1];", "cx q[1],q[0];", "cx q[0],q[1];"]


def test_empty_roundtrip():
    c = import_qasm(export_qasm(Circuit(3)))
    assert c.n_qubits == 3 and c.ops == ()


def test_roles_roundtrip():
    c = Circuit(3, (Op(g.CNOT, (2, 0)),), {"central": 2, "bath1": 0})
    assert import_qasm(export_qasm(c)).role_map == c.role_map


def test_angle_format_roundtrips_exactly():
    for x in (np.pi, -np.pi / 2, 1e-300, 2 * np.arccos(1 / np.sqrt(3)), 0.1 + 0.2, -0.0):
        s = format_angle(x)
        assert float(s) == x
        assert len(s.lstrip("-").replace(".", "").replace("e", "").lstrip("0")) <= 20


def test_malformed_angle_reports_line():
    text = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nu3(1.0,abc,0) q[0];\n'
    with pytest.raises(QasmError, match="line 4") as exc:
        import_qasm(text)
    assert exc.value.lineno == 4


@pytest.mark.parametrize(
    "stmt, name",
    [("measure q[0] -> c[0];", "measure"), ("h q[0];", "h"), ("barrier q;", "barrier")],
)
def test_unsupported_statement(stmt, name):
    text = f"OPENQASM 2.0;\nqreg q[2];\n{stmt}\n"
    with pytest.raises(QasmError, match=f"line 3: unsupported statement '{name}'"):
        import_qasm(text)


def test_other_errors():
    with pytest.raises(QasmError, match="header"):
        import_qasm("qreg q[1];\n")
    with pytest.raises(QasmError, match="outside register"):
        import_qasm("OPENQASM 2.0;\nqreg q[1];\ncx q[0],q[1];\n")
    with pytest.raises(QasmError, match="missing ';'"):
        import_qasm("OPENQASM 2.0;\nqreg q[1];\nu3(0,0,0) q[0]\n")


@pytest.mark.parametrize("spec", [TwoPES(0.7), ThreePES(1.3), ExcitedCentral(4)], ids=repr)
@pytest.mark.parametrize("steps", [1, 2])
def test_full_circuit_roundtrip(spec, steps):
    c = compose_circuit(spec, 0.8, steps, default_topology())
    back = import_qasm(export_qasm(c))
    assert back.ops == lower(c).ops
    assert np.max(np.abs(unitary_of(back) - unitary_of(c))) < 1e-10


_ONE = [g.H, g.X, g.Y, g.Z]


@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(0, 30))
def test_roundtrip_is_bijective(seed, n, depth):
    rng = np.random.default_rng(seed)
    ops = []
    for _ in range(depth):
        r = rng.random()
        if n > 1 and r < 0.3:
            a, b = rng.choice(n, 2, replace=False)
            ops.append(Op(g.CNOT, (int(a), int(b))))
        elif r < 0.6:
            ops.append(Op(g.U3(*rng.normal(scale=3, size=3)), (int(rng.integers(n)),)))
        else:
            ops.append(Op(_ONE[rng.integers(4)], (int(rng.integers(n)),)))
    c = lower(Circuit(n, tuple(ops)))
    once = import_qasm(export_qasm(c))
    assert once.ops == c.ops
    assert export_qasm(once) == export_qasm(c)
