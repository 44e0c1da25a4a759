#!/usr/bin/env python3
# Copyright 2026 The unsubx Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Validates CLI chart output against the chart schema with jsonschema.

Usage: validate_charts.py CLI SCHEMA CSV
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def check(cli, validator, args):
    with tempfile.TemporaryDirectory() as out:
        subprocess.run([cli, *args, "--out-dir", out, "--format", "json"], check=True, stdout=subprocess.DEVNULL)
        files = sorted(pathlib.Path(out).glob("*.json"))
        if len(files) != 12:
            raise SystemExit(f"{args}: expected 12 charts, got {len(files)}")
        for f in files:
            errors = list(validator.iter_errors(json.loads(f.read_text())))
            if errors:
                raise SystemExit(f"{args} {f.name}: {errors[0].message}")


def main():
    cli, schema_path, csv_path = sys.argv[1:4]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    jsonschema.Draft7Validator.check_schema(schema)
    validator = jsonschema.Draft7Validator(schema)
    check(cli, validator, [csv_path])
    check(cli, validator, ["--sample"])
    check(cli, validator, ["--sample", "--statuses", "MAYBE", "--usage-min", "100"])
    print("24+ chart documents valid")


if __name__ == "__main__":
    main()
