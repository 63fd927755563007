"""Validates substar report documents against the shipped schema."""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema


def main() -> int:
    cli, root = Path(sys.argv[1]), Path(sys.argv[2])
    schema = json.loads((root / "schema" / "report.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failed = 0
    for spec in sorted((root / "data" / "corpus").glob("*.sub")):
        out = subprocess.run([str(cli), "report", str(spec), "--format", "json"], capture_output=True, text=True)
        errors = list(validator.iter_errors(json.loads(out.stdout)))
        for e in errors:
            print(f"{spec.name}: {e.json_path}: {e.message}")
        failed += bool(errors) or out.returncode not in (0, 1)
        print(f"{spec.name}: {'valid' if not errors else 'INVALID'} (exit {out.returncode})")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
