"""Smoke test for the rinorm Python bindings.

Build first with `pip install --no-build-isolation -e crates/py`.
"""

import json
import math

import rinorm


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    u = rinorm.StepFunction([0.5, 1.0, 3.0], [1.0, 4.0, 2.0])
    r = u.rearrangement()
    assert r.values == [4.0, 2.0, 1.0], r
    assert close(r.integral(), u.integral())
    assert close(u.distribution().right_inverse().integral(), r.integral())
    assert rinorm.StepFunction.from_json(u.to_json()) == u

    chi = rinorm.StepFunction.indicator(0.0, 2.0)
    for spec in [rinorm.NormSpec.lebesgue(2), rinorm.NormSpec.lorentz(2, 1),
                 rinorm.NormSpec({"family": "lebesgue", "p": 1})]:
        assert close(rinorm.norm(chi, spec), rinorm.fundamental_function(spec, 2.0)), spec

    young = {"kind": "power", "p": 2}
    ratio = rinorm.amemiya_norm(u, young) / rinorm.norm(u, rinorm.NormSpec({"family": "orlicz", "young": young}))
    assert 1.0 <= ratio <= 2.0 + 1e-9, ratio

    w = rinorm.HWitness.lorentz(1, 2, 1.5, 10)
    spec = rinorm.NormSpec.lorentz(1, 2)
    assert len(w) == 10
    assert close(sum(w.weights), rinorm.harmonic(10))
    assert all(close(w.piece_norm(k, spec), 1.5 / math.sqrt(2), 1e-9) for k in range(10))
    report = w.verify(spec)
    json.dumps(report)
    assert w.level_set_measure(spec) > 0

    field = rinorm.maximal_field(chi, rinorm.NormSpec.lebesgue(1), -1.0, 3.0, 9)
    assert len(field) == 9 and all(v >= 0 for _, v in field)

    preset = rinorm.run_preset("levelset", n=16)
    assert preset["verdict"] in ("pass", "counterexample_confirmed"), preset["verdict"]

    try:
        rinorm.StepFunction([1.0, 0.5], [1.0, 1.0])
    except ValueError:
        pass
    else:
        raise AssertionError("unsorted breakpoints accepted")

    print("smoke: ok")


if __name__ == "__main__":
    main()
