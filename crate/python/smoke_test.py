"""Smoke test for the modcount extension module.

Build and install first:
    pip install --no-build-isolation ./crates/py
"""

import json
from fractions import Fraction

import modcount


def main() -> None:
    assert modcount.count_irreducibles(2, 4) == 3
    assert modcount.irreducibles(2, 2) == ["T^2+T+1"]
    assert modcount.is_irreducible("T^3+T+1", 2)

    assert modcount.is_admissible("T^3+2*T+1", 3, 2)
    assert not modcount.is_admissible("T^2+1", 3, 2)
    assert modcount.brute_force_admissible("T^3+2*T+1", 3, 2)
    assert modcount.admissible_primes(3, 2, 1, exclude=["T", "T+1"]) == ["T+2"]

    assert modcount.zeta_partial(3, [], 1) == Fraction(1, 16)
    assert modcount.euler_product_check(3, 10)

    alg = modcount.Algebra(3, 2, ["T", "T+1"])
    assert alg.volume() == alg.volume_residue()

    level = alg.level("T+2", "T^3+2*T+1")
    assert level.supersingular_count() == 19656
    assert level.asymptotic_h() == 19656
    assert level.asymptotic_h(barred=False) == 255528
    assert level.component_count() == 13
    assert level.ratio() == level.limit_ratio() == 1
    approx, exact = level.wd_ratio()
    assert abs(approx - 3) < 1e-3, exact

    mixed = modcount.Algebra(2, 3, [("T", "1/3"), ("T+1", "2/3")])
    assert mixed.level("T^2+T+1", "T^5+T^2+1").ratio() == 15

    assert modcount.betti_vector(2, 4) == [1, 2, 1]

    cfg = {"q": 3, "d": 2, "ramification": ["T", "T+1"], "o": "T+2", "level_degrees": [2, 3], "max_per_degree": 1}
    csv = modcount.convergence_table(json.dumps(cfg))
    assert "none admissible" in csv and "19656" in csv

    report = json.loads(modcount.run_check("quick", 0))
    assert report["passed"], report

    try:
        modcount.Algebra(3, 2, ["T"])
    except ValueError:
        pass
    else:
        raise AssertionError("single ramified place should be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
