"""Smoke test for the opcohom_py extension.

Build first with `cargo build --release -p opcohom-py`; the script loads
target/release/libopcohom_py.so (or the debug build) without installing it.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libopcohom_py.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("opcohom_py", str(lib))
            spec = importlib.util.spec_from_loader("opcohom_py", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("libopcohom_py.so not found; run `cargo build --release -p opcohom-py`")


def main():
    op = load()
    Algebra = op.Algebra

    plane = Algebra.parse((ROOT / "data" / "plane_q1.alg").read_text())
    assert plane.generators == ["x", "y"], plane.generators
    assert plane.hilbert(4) == [1, 2, 3, 4, 5]
    assert plane.dual().dual() == plane
    assert plane.dual().hilbert(3) == [1, 2, 1, 0]
    assert Algebra.from_json(plane.to_json()) == plane

    coend = plane.coend()
    assert len(coend.generators) == 4 and len(coend.relations) == 3, coend

    line = Algebra.polynomial_line()
    assert plane.white(line).hilbert(3) == plane.hilbert(3)
    q2 = Algebra.quantum_space("2")
    assert q2.hilbert(3) == [1, 2, 3, 4]
    try:
        Algebra.parse("generators: x\nrelations: x*z\n")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown generator accepted")

    dims = dict(op.free_operad_dims("ordinary", "binary_sym"))
    assert [dims[f"g0_o1_i{n}"] for n in (2, 3, 4)] == [1, 3, 15], dims
    assert op.triple_laws_hold("non_symmetric", arity=4, weight=3)

    report = json.loads(op.operad_cohom("associative", "commutative", arity=3, weight=2))
    assert report["checks"]["failures"] == [], report["checks"]

    assert op.free_p_algebra_dims("commutative", 2, 4) == [2, 3, 4, 5]

    bad = (ROOT / "data" / "bad_graph.json").read_text()
    assert len(op.validate_graph(bad)) == 5
    contract = json.loads((ROOT / "data" / "contract_edge.json").read_text())
    assert op.validate_graph(json.dumps(contract)) == []

    results = op.run_acceptance("free-dims")
    assert results and all(passed for _, _, passed, _ in results), results

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
