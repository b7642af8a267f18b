import json
import os
import subprocess
import sys

import pytest

from hopfverify import kernel

# Computes a digest of bracket tables, coproduct images and the mass Casimir
# so the two kernels can be compared across processes.
PROBE = """
import hashlib, json
from hopfverify.algfile import format_element
from hopfverify.kernel import IMPLEMENTATION
from hopfverify.models import ModelRegistry
reg = ModelRegistry(3)
parts = []
for name in ("tilde", "bicross"):
    p = reg.presentation(name)
    parts += [format_element(v) for _, v in sorted(p.algebra.bracket_table().items())]
    parts += [format_element(p.coproduct[n]) for n in p.algebra.names]
parts.append(format_element(reg.mass_casimir))
parts.append(format_element(reg.pl_square))
print(json.dumps({"impl": IMPLEMENTATION, "digest": hashlib.sha256("\\n".join(parts).encode()).hexdigest()}))
"""


def probe(pure: bool) -> dict:
    env = dict(os.environ)
    env.pop("HOPFVERIFY_PURE", None)
    if pure:
        env["HOPFVERIFY_PURE"] = "1"
    r = subprocess.run([sys.executable, "-c", PROBE], capture_output=True, text=True, env=env, check=True)
    return json.loads(r.stdout)


def test_implementation_is_named():
    assert kernel.IMPLEMENTATION in ("python", "cython")


def test_pure_override_selects_fallback():
    assert probe(pure=True)["impl"] == "python"


@pytest.mark.skipif(kernel.IMPLEMENTATION != "cython", reason="compiled kernel not built")
def test_kernels_agree():
    fast, slow = probe(pure=False), probe(pure=True)
    assert fast["impl"] == "cython"
    assert fast["digest"] == slow["digest"]


def test_pure_kernel_raises_fuel_error_in_subprocess():
    code = (
        "from hopfverify.ncpoly import FreeAlgebra, NCAlgebra\n"
        "from hopfverify.kernel import RewriteFuelError\n"
        "g = [('A', 0), ('B', 1)]\n"
        "alg = NCAlgebra(g, {('B', 'A'): FreeAlgebra(g, 2).gen('B') * FreeAlgebra(g, 2).gen('A')}, 2)\n"
        "try:\n"
        "    alg.gen('B') * alg.gen('A')\n"
        "except RewriteFuelError:\n"
        "    print('raised')\n"
    )
    env = dict(os.environ, HOPFVERIFY_PURE="1")
    r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert r.stdout.strip() == "raised", r.stderr
