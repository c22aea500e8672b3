"""Smoke test for the usmod extension module.

Uses an installed `usmod` if importable (e.g. after `maturin develop`),
otherwise builds the cdylib with cargo and loads it from a temp dir.
"""

import json
import os
import shutil
import subprocess
import sys
import sysconfig
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    try:
        import usmod

        return usmod
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "-p", "usmod-python", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    target = os.environ.get("CARGO_TARGET_DIR", os.path.join(ROOT, "target"))
    lib = {"darwin": "libusmod_py.dylib", "win32": "usmod_py.dll"}.get(sys.platform, "libusmod_py.so")
    out = tempfile.mkdtemp(prefix="usmod-py-")
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(os.path.join(target, "debug", lib), os.path.join(out, "usmod" + suffix))
    sys.path.insert(0, out)
    import usmod

    return usmod


def main():
    usmod = load()
    z6 = usmod.Ring.zmod(6)
    s = usmod.MultiplicativeSet.closure(z6, ["4"])
    assert s.members() == ["1", "4"], s.members()
    assert s.sigma == "4"

    m = usmod.Module.regular(z6)
    k = m.span(["2"])
    assert k.elements() == ["0", "2", "4"]
    assert k.is_u_s_essential(s)
    assert not k.is_essential()
    for method in ("fast", "oracle", "quotient"):
        v = k.u_s_essential_verdict(s, method)
        assert v["verdict"] is True, (method, v)

    h = m.span(["3"])
    v = h.u_s_essential_verdict(s)
    assert v["verdict"] is False and v["counterexample_L"] is not None
    assert m.s_torsion(s) == h

    cert = json.loads(usmod.envelope_json(k.as_module(), s))
    assert cert["verdict"] == "envelope", cert
    assert cert["essential_verdict"]["verdict"] is True

    z4 = usmod.Ring.zmod(4)
    two = usmod.Module.regular(z4).span(["2"]).as_module()
    rep = json.loads(usmod.injectivity_json(two, usmod.MultiplicativeSet.units(z4), "refute"))
    assert rep["verdict"] == "refuted" and rep["witness_replays"] is True, rep

    results = usmod.check("ring R = zmod 6\nmset S over R = closure {4}\nmodule M over R = regular\n"
                          "sub K of M = gens {2}\nassert u_s_essential(K, S) == true\nassert essential(K) == false\n")
    assert [r[2] for r in results] == ["pass", "pass"], results

    report = json.loads(usmod.laws_json(seed=1, count=5))
    assert report["totals"]["violated"] == 0, report["totals"]

    found = json.loads(usmod.search_json("u-S-essential-not-essential", max_ring=6, max_module=12))
    assert len(found["witnesses"]) >= 1

    try:
        usmod.MultiplicativeSet.closure(z6, ["0"])
    except ValueError:
        pass
    else:
        raise AssertionError("0 in S should be rejected")

    print("usmod", usmod.__version__, "python smoke test: ok")


if __name__ == "__main__":
    main()
