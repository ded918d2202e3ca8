"""Quick check that the compiled `cohere` module imports and agrees with
closed forms. Build it first with `maturin develop -m crates/py/Cargo.toml`
(or `pip install --no-build-isolation crates/py`)."""

import math

import cohere


def close(a, b, tol=1e-9):
    assert abs(a - b) <= tol, (a, b)


def main():
    plus = cohere.DensityOperator.preset("plus")
    close(cohere.coherence_rel_entropy(plus), 1.0)
    close(cohere.coherence_l1(plus), 1.0)
    close(cohere.coherence_rel_entropy(plus, "hadamard"), 0.0)

    rho = cohere.DensityOperator([[0.5, 0.25], [0.25, 0.5]])
    h = -(0.25 * math.log2(0.25) + 0.75 * math.log2(0.75))
    close(cohere.coherence_rel_entropy(rho), 1.0 - h)
    close(cohere.relative_entropy(rho, rho), 0.0)
    assert math.isinf(cohere.relative_entropy(plus, cohere.DensityOperator.preset("zero")))

    close(cohere.cohering_power("H")["value"], 1.0)
    close(cohere.cohering_power("ZYZ:0,0,0.7,0")["value"], -(math.cos(0.35) ** 2 * math.log2(math.cos(0.35) ** 2)
                                                           + math.sin(0.35) ** 2 * math.log2(math.sin(0.35) ** 2)))
    close(cohere.decohering_power("phase_flip:0.5", mode="canonical")["value"], 1.0)
    close(cohere.decohering_power("bit_flip:0.25", mode="canonical")["value"], 0.0)
    close(cohere.sup_cohering_power("U_adc:0.5")["value"], 1.5)

    bell = cohere.DensityOperator.preset("bell")
    close(cohere.qi_relative_entropy(bell), 1.0)
    close(cohere.discord(bell), 1.0)
    close(cohere.deficit(bell)["value"], 1.0, 1e-6)
    close(bell.reduce([0]).purity(), 0.5)

    chain = cohere.coherence_chain(plus, "CNOT")
    assert chain["holds"]
    close(chain["values"]["E"], 1.0)

    out = plus.tensor(cohere.DensityOperator.preset("zero")).evolve("CNOT")
    close(cohere.coherence_rel_entropy(out), 1.0)

    report = cohere.run_suite("cohering", seed=7)
    assert all(c["pass"] for c in report["checks"]), [c["id"] for c in report["checks"] if not c["pass"]]
    assert "deficit" in cohere.SUITES

    try:
        cohere.run_suite("nope")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown suite accepted")

    print(f"smoke test passed ({len(report['checks'])} cohering checks)")


if __name__ == "__main__":
    main()
