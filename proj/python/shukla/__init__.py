"""Exact cohomology of finite-dimensional algebra presentations.

Thin wrapper over the ``_core`` extension module.  Every function here maps
onto one CLI command; inputs may be builtin names (``"dual_numbers"``),
``builtin:`` references, file paths, or plain dicts in the documented JSON
formats (dicts are serialized inline, no temp files involved).
"""

import json as _json

from ._core import DEFAULT_SIZE_CAP, invoke

__all__ = [
    "DEFAULT_SIZE_CAP",
    "ShuklaError",
    "invoke",
    "validate",
    "cohomology",
    "hochschild",
    "compare",
    "ext2_check",
    "ext2_build",
    "ext2_extract",
    "ext2_classify",
    "ext3_check",
    "ext3_crossed",
    "ext3_from_crossed",
    "builtin_list",
    "builtin_emit",
    "selftest",
]


class ShuklaError(RuntimeError):
    """Raised when a command fails.  ``exit_code`` follows the CLI contract:
    1 = mathematical rejection, 2 = internal invariant failure, 64 = usage."""

    def __init__(self, exit_code, message):
        super().__init__(message)
        self.exit_code = exit_code


def _doc(arg):
    """Accept dicts as inline JSON documents; pass strings through."""
    if isinstance(arg, dict):
        return _json.dumps(arg)
    return arg


def _run(command, args, *, allow_reject=False, **options):
    code, out, err = invoke(command, [_doc(a) for a in args], **options)
    if code != 0 and not (allow_reject and code == 1):
        raise ShuklaError(code, err.strip() or out.strip() or f"exit code {code}")
    return code, out


def _run_json(command, args, *, allow_reject=False, **options):
    options.setdefault("format", "json")
    code, out = _run(command, args, allow_reject=allow_reject, **options)
    report = _json.loads(out)
    if allow_reject:
        report["accepted"] = code == 0
    return report


def validate(a, r, m, *, lie=False, **options):
    """Check the axioms of a presentation triple.  The report lists every
    violated identity; ``accepted`` is False when any input fails."""
    return _run_json("validate", [a, r, m], allow_reject=True, lie=lie, **options)


def cohomology(a, r, m, *, lie=False, **options):
    """Cohomology of the triple over the base ``a`` (associative by default,
    Lie with ``lie=True``), including the relative dimensions."""
    return _run_json("cohomology", [a, r, m], lie=lie, **options)


def hochschild(r, m, *, over_a="", **options):
    """Classical cohomology of ``r`` with coefficients in ``m``; with
    ``over_a`` the complex is formed relative to that base."""
    return _run_json("hochschild", [r, m], over_a=over_a, **options)


def compare(a, r, m, **options):
    """The comparison map from relative to absolute cohomology, degree by
    degree with rank and injectivity/surjectivity verdicts."""
    return _run_json("compare", [a, r, m], **options)


def ext2_check(a, r, m, cocycle, **options):
    """Verify a degree-2 datum against the cocycle identities and report a
    primitive when it bounds."""
    return _run_json("ext2", ["check", a, r, m, cocycle], allow_reject=True, **options)


def ext2_build(a, r, m, cocycle, **options):
    """Build the square-zero extension determined by a 2-cocycle."""
    return _run_json("ext2", ["build", a, r, m, cocycle], **options)


def ext2_extract(a, r, m, extension, **options):
    """Extract a 2-cocycle from an extension via the canonical section."""
    return _run_json("ext2", ["extract", a, r, m, extension], **options)


def ext2_classify(a, r, m, **options):
    """Enumerate all degree-2 classes by brute force (finite fields only)."""
    return _run_json("ext2", ["classify", a, r, m], **options)


def ext3_check(a, r, m, cocycle, **options):
    """Verify a degree-3 datum against the cocycle identities."""
    return _run_json("ext3", ["check", a, r, m, cocycle], allow_reject=True, **options)


def ext3_crossed(a, r, m, extension, **options):
    """Produce the crossed presentation attached to an extension."""
    return _run_json("ext3", ["crossed", a, r, m, extension], **options)


def ext3_from_crossed(a, r, m, crossed, **options):
    """Produce the 3-cocycle classifying a crossed presentation."""
    return _run_json("ext3", ["from-crossed", a, r, m, crossed], **options)


def builtin_list(**options):
    """Catalog of builtin presentations."""
    return _run_json("builtin", ["list"], **options)


def builtin_emit(name, **options):
    """Standalone JSON document for one builtin presentation."""
    return _run_json("builtin", ["emit", name], **options)


def selftest(**options):
    """Run the internal consistency suite; returns its log."""
    _, out = _run("selftest", [], format="table", **options)
    return out
