"""Validates example configs and freshly written sidecars against the published schemas."""
import glob
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
config_schema = json.loads((root / "schemas/config.schema.json").read_text())
sidecar_schema = json.loads((root / "schemas/sidecar.schema.json").read_text())
registry = Registry().with_resources([
    ("pairwave/config.schema.json", Resource.from_contents(config_schema)),
    ("pairwave/sidecar.schema.json", Resource.from_contents(sidecar_schema)),
])
configs = jsonschema.Draft202012Validator(config_schema, registry=registry)
sidecars = jsonschema.Draft202012Validator(sidecar_schema, registry=registry)

with tempfile.TemporaryDirectory() as tmp:
    for path in sorted(glob.glob(str(root / "configs/*.json"))):
        doc = json.loads(pathlib.Path(path).read_text())
        configs.validate(doc)
        out = pathlib.Path(tmp) / (pathlib.Path(path).stem + ".out")
        subprocess.run([cli, doc["kind"], "--config", path, "--out", str(out)], check=True)
        sidecars.validate(json.loads(out.with_name(out.name + ".meta.json").read_text()))
        print("ok", pathlib.Path(path).name)

rejected = json.loads((root / "tests/configs/unknown_key.json").read_text())
if configs.is_valid(rejected):
    sys.exit("schema accepted a config with an unknown key")
