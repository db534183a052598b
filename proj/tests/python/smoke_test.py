"""Smoke tests for the python bindings.

Run with PYTHONPATH pointing at the built extension and the python/ package
directory, and PROBLEMS_DIR at the problem-file corpus.
"""

import os
import sys

from jetnoether import JetNoetherError, Problem

PROBLEMS = os.environ["PROBLEMS_DIR"]


def load(name):
    with open(os.path.join(PROBLEMS, name), encoding="utf-8") as fh:
        return Problem(fh.read())


def test_adjoint_kdv():
    kdv = load("kdv.prob")
    out = kdv.run("adjoint")
    assert out["exit_code"] == 0, out["text"]
    assert out["report"]["verdict"] == "self-adjoint"
    assert out["report"]["equations"][0]["adjoint"] == "-u*v_x - v_t - v_{xxx}"


def test_conserve_burgers():
    burgers = load("burgers.prob")
    out = burgers.run("conserve", gen=["X3"])
    assert out["exit_code"] == 0, out["text"]
    law = out["report"]["laws"][0]
    assert law["triviality"] == "nontrivial"
    assert law["residual"] == "zero"
    assert law["characteristics"]["u"] == "1"
    # X1 folds to a trivial law
    trivial = burgers.run("conserve", gen=["X1"])["report"]["laws"][0]
    assert trivial["triviality"].startswith("trivial")


def test_divtest_and_normalize():
    kdv = load("kdv.prob")
    out = kdv.run("divtest", expr="u_x*u_{xx}")
    assert out["exit_code"] == 0
    assert out["report"]["fluxes"]["x"] == "1/2*u_x^2"
    assert kdv.normalize("u*u_x - u_x*u") == "0"
    assert kdv.normalize("(u+1)^2") == "1 + 2*u + u^2"


def test_problem_introspection_and_roundtrip():
    fw = load("fw.prob")
    assert fw.generator_names == ["X1", "X2", "X3"]
    assert len(fw.equations) == 1
    again = Problem(fw.render())
    assert again.equations == fw.equations


def test_errors_surface_as_exceptions():
    try:
        Problem("not a problem file")
    except JetNoetherError:
        pass
    else:
        raise AssertionError("expected JetNoetherError")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok   {test.__name__}")
    print(f"all {len(tests)} python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
