"""Writes a presentation document for the exterior algebra on one odd generator
and runs a few commands on it, saving JSON reports next to the document."""

import json
import sys
import tempfile
from pathlib import Path

from curvedkoszul.cli import run

doc = {
    "name": "exterior1",
    "mode": "commutative",
    "generators": [["x", 1]],
    "relations": [],
}

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="curvedkoszul-"))
out_dir.mkdir(parents=True, exist_ok=True)
path = out_dir / "exterior1.json"
path.write_text(json.dumps(doc, indent=2))

status = 0
for cmd in (["validate"], ["axioms", "--max-weight", "4"], ["lie", "--max-weight", "4"], ["uc-compare", "--n-max", "4"]):
    report = out_dir / f"{cmd[0]}.json"
    code = run([*cmd, "--out", str(report), str(path)], sys.stdout)
    status = max(status, code)
    print()
print(f"reports in {out_dir}")
sys.exit(status)
