"""Smoke test for the compiled extension: python smoke_test.py"""

import json

import cycbound

PAPER_SET = "C1+C3+C7+C9"


def main():
    value, witness = cycbound.bound(2, 21, PAPER_SET, "roos")
    assert value == 8, value
    assert json.loads(witness)["case"] == "roos"
    assert cycbound.bounds(2, 21, PAPER_SET) == {"BCH": 5, "HT": 6, "BS": 6, "RS": 8, "BC": 6}
    assert cycbound.distance(2, 21, PAPER_SET) == 8
    assert cycbound.distance(2, 7, "C1+C3") == 7
    assert cycbound.schaub(2, 7, "C1") == 3
    assert len(cycbound.cosets(2, 15)) == 5
    assert cycbound.includes("(0^2)D", "0DND0") == 4
    assert cycbound.includes("0NN", "NN0DD") is None
    assert cycbound.tightness(2, 15) == (32, [30, 32, 30, 32, 32])
    try:
        cycbound.bound(2, 14, "C1", "bch")
    except ValueError:
        pass
    else:
        raise AssertionError("even length over F_2 must be rejected")
    try:
        cycbound.distance(2, 31, "C1", cap=10)
    except RuntimeError:
        pass
    else:
        raise AssertionError("cap must be enforced")
    print("ok")


if __name__ == "__main__":
    main()
