import os
import subprocess
import sys

import pytest

DEMOS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "demos")


@pytest.mark.parametrize("script", sorted(f for f in os.listdir(DEMOS) if f.endswith(".py")))
def test_demo_runs(script):
    out = subprocess.run([sys.executable, os.path.join(DEMOS, script)], capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout
