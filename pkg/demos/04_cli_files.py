"""The command-line surface: JSON documents in, reports and exit codes out.

Writes a pair document and a deformation document to a scratch directory,
then drives the `cpair` commands the way a shell user would.  Exit codes:
0 = success, 1 = a mathematical claim failed, 2 = malformed input.

Run as: python3 demos/04_cli_files.py
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def run(*argv):
    proc = subprocess.run([sys.executable, "-m", "cpair", *argv],
                          capture_output=True, text=True)
    cmd = " ".join(argv)
    print(f"$ cpair {cmd}")
    out = proc.stdout.strip() or proc.stderr.strip()
    for line in out.splitlines()[:6]:
        print(f"  {line}")
    if len(out.splitlines()) > 6:
        print("  ...")
    print(f"  [exit {proc.returncode}]")
    print()
    return proc


def main():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)

        proc = run("catalog", "list")
        assert proc.returncode == 0

        proc = run("catalog", "export", "dual_numbers_line")
        assert proc.returncode == 0
        pair_file = tmp / "dual.json"
        pair_file.write_text(proc.stdout, encoding="utf-8")

        run("validate", str(pair_file))
        run("cohomology", str(pair_file), "--degree", "2")

        deformation = {
            "pair": "dual_numbers_line",
            "order": 1,
            "coefficients": {
                "1": {"alpha": [[1, 1, ["1", "0"]]]}
            },
        }
        d_file = tmp / "relax.json"
        d_file.write_text(json.dumps(deformation), encoding="utf-8")
        run("deform", str(d_file), "validate")
        run("deform", str(d_file), "obstruction")
        proc = run("deform", str(d_file), "extend", "--to", "3", "--json")
        assert json.loads(proc.stdout)["ok"] is True

        # malformed input: a decimal literal is rejected before any math runs
        bad = tmp / "bad.json"
        bad.write_text(pair_file.read_text(encoding="utf-8")
                       .replace('"1"', "0.5", 1), encoding="utf-8")
        proc = run("validate", str(bad))
        assert proc.returncode == 2

        # the degree cap refuses silly requests with a cost estimate
        proc = run("cohomology", str(pair_file), "--degree", "9")
        assert proc.returncode == 2


if __name__ == "__main__":
    main()
