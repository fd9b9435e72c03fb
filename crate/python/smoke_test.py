"""Smoke test for the supercohom_py extension module."""

import json

import supercohom_py as sc


def main() -> None:
    names = sc.catalog_list()
    assert len(names) == 8, names

    model = sc.Algebra.model(1, 2)
    assert model.even == ["X0", "X1"] and model.odd == ["Y1", "Y2"]
    assert model.betti(6) == [1, 3, 4, 4, 4, 4, 4]
    assert [sc.betti_formula(1, 2, k) for k in range(7)] == model.betti(6)

    report = model.betti_report(4, oracle=True)
    assert report["oracle_agrees"] is True

    f22_3 = sc.Algebra.catalog("F22_3")
    assert f22_3.validate()["valid"]
    table = f22_3.products(4)
    assert table["supercommutative"] and table["associative"]
    assert any(c == "2" for row in table["products"] for _, c in row["result"])

    dph = sc.Algebra.catalog("F22_2").dph(5, [1, 1])
    assert dph["total"] == sum(dph["dims"])
    assert dph["reference_note"] == "no published reference"

    again = sc.Algebra.from_json(f22_3.to_json(), "copy")
    assert again.betti(5) == f22_3.betti(5)

    broken = json.loads(model.to_json())
    broken["brackets"].append({"left": "Y1", "right": "Y1", "out": {"X0": "1"}})
    try:
        sc.Algebra.from_json(json.dumps(broken))
    except ValueError:
        pass
    else:
        raise AssertionError("invalid algebra accepted")

    assert sc.oracle_report(2, 2, 6)["passed"]
    print("smoke test passed")


if __name__ == "__main__":
    main()
