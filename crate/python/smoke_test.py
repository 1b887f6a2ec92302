"""Smoke test for the weightcat extension module.

Build first, then run from the repo root:

    cargo build -p weightcat-py --release
    cp target/release/libweightcat_py.so python/weightcat.so
    python3 python/smoke_test.py

or install with `maturin develop -m crates/py/pyproject.toml`.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import weightcat  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def main():
    ell = weightcat.Model.load(os.path.join(ROOT, "models", "ell.json"))
    assert ell.simples == ["one", "h1", "lef", "sym2"], ell.simples
    assert ell.hom_dim("one+h1", "one+h1") == 3
    assert ell.numerical_ideal_dim("one+h1", "one+h1") == 1
    assert ell.radical_dim("one+h1", "one+h1") == 1
    assert ell.dim("h1") == "-2"
    assert ell.tensor("h1", "h1") == "lef+sym2"
    assert ell.kimura_profile("h1") == (0, 2)
    assert ell.sym_power_rank("h1", 3) == "0"
    assert ell.wedge_power_rank("h1", 2) == "3"

    builtin = weightcat.Model.builtin("ell")
    assert weightcat.Model.from_json(builtin.to_json()).to_json() == ell.to_json()

    x = weightcat.Complex.arrow(ell)
    assert x.kb_trace() == "3"
    assert x.weight_window() == (-1, 0)
    assert x.pi() == "[0] one ⊕ [1] h1"
    unit = weightcat.Complex.from_json(ell, '{"components": {"0": {"one": 1}}}')
    assert unit.fullness_gap(x) == (0, 1)
    assert unit.hom_dim(x) == 0
    low, high = x.truncate(-1)
    assert low.weight_window() == (-1, -1) and high.weight_window() == (0, 0)

    report = json.loads(ell.run_scenario("prop-6.1"))
    assert report["pass"], report
    try:
        ell.run_scenario("prop-9.9")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown scenario accepted")

    ok, text = weightcat.Model.builtin("arrow").verify_all()
    assert ok, text
    assert "prop-6.6" in weightcat.scenarios()
    print("smoke test passed")


if __name__ == "__main__":
    main()
