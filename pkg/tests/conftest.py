import json
import os
import sys
from importlib import resources

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def _schema(name):
    return json.loads(resources.files("basistype").joinpath("schemas", name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def schema_validator():
    """``validate(command, payload)`` against the shipped CLI output schema."""
    from jsonschema import Draft202012Validator
    from referencing import Registry, Resource

    docs = {name: _schema(name) for name in ("cli_output.schema.json", "matrix_file.schema.json", "catalog.schema.json")}
    registry = Registry().with_resources(
        (doc["$id"], Resource.from_contents(doc)) for doc in docs.values()
    )
    cli = docs["cli_output.schema.json"]

    def validate(command, payload):
        schema = {"$id": cli["$id"], "$defs": cli["$defs"], "$ref": f"#/$defs/{command}"}
        Draft202012Validator(schema, registry=registry).validate(payload)

    return validate


# one (criterion, title, passed, seconds, limit) record per acceptance criterion
ACCEPTANCE: list[tuple[int, str, bool, float, float | None]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, seconds, limit in sorted(ACCEPTANCE):
        budget = f" (limit {limit:g}s)" if limit else ""
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number:>2}: {title} [{seconds:.2f}s{budget}]")
