"""Validate emitted JSON reports against the published schema."""
import json
import sys

import jsonschema

schema_path, *reports = sys.argv[1:]
with open(schema_path) as f:
    schema = json.load(f)
for path in reports:
    with open(path) as f:
        jsonschema.validate(json.load(f), schema)
    print(f"valid: {path}")
