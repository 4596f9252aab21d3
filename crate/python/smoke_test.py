"""Smoke test for the parrep extension module.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import json
import sys

import parrep


def main():
    dims = json.loads(parrep.build("cyclic:2"))["dims"]
    assert dims["apar"] == 2 and dims["hpar"] == 3 and dims["hglob"] == 6, dims

    # dim H_par = 2^(n-1) + (n-1) 2^(n-2)
    for n in (3, 4):
        d = json.loads(parrep.build(f"cyclic:{n}"))["dims"]
        assert d["hpar"] == 2 ** (n - 1) + (n - 1) * 2 ** (n - 2), d

    rep = json.loads(parrep.verify("cyclic:3", timed=False))
    assert rep["status"] == "pass", [s["name"] for s in rep["suites"] if s["status"] != "pass"]
    assert "timing" not in rep
    assert parrep.verify("cyclic:3", timed=False) == parrep.verify("cyclic:3", timed=False)

    for bad, exc in (("cyclic:9", ValueError), ("nonsense", ValueError)):
        try:
            parrep.build(bad)
        except exc:
            pass
        else:
            raise AssertionError(f"{bad} was accepted")
    try:
        parrep.verify("symmetric:3", suites="hpar")
    except ValueError:
        pass
    else:
        raise AssertionError("order 6 verified without extended=True")

    print(f"parrep {parrep.__version__}: smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
