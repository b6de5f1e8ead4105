"""Command-line front end.

A job is written as::

    field Q2((t)); form scale(t, diag(1,-5)); cmd tame-class --route=springer-t

with an optional ``norm <literal>;`` statement.  Exit codes: 0 success,
2 inconclusive within the budgets, 1 error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

from . import linalg
from .graded_forms import TameWittClass
from .literals import LiteralError, format_form, format_value, parse_form, parse_norm
from .norms import Norm, NormError, check_bounded, induce_graded_form, is_tame_norm
from .quadratic_forms import FormError, QuadraticForm, SearchBudget, strip_hyperbolic_planes, witt_decompose_finite
from .tame_witt import (
    DecompositionCertificate,
    PreconditionError,
    hensel_isotropic_vector,
    is_in_Iqt,
    residue_class,
    springer_tame_decompose,
    witt_index_tame,
)
from .valued_fields import DYADIC, Field, FieldError, RationalFunctionField, field_by_name
from .valuegroup import ValueGroupElement

COMMANDS = ("residue", "witt-index", "decompose", "tame-class", "verify", "paper-example")
ROUTES = ("tame-residue", "springer-t")
OPTION_NAMES = ("budget-degree", "budget-height", "precision", "route", "certificate")

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class JobError(ValueError):
    pass


@dataclass
class JobSpec:
    command: str
    field_name: str | None = None
    form_text: str | None = None
    norm_text: str | None = None
    options: dict = field(default_factory=dict)

    def to_text(self) -> str:
        parts = []
        if self.field_name is not None:
            parts.append(f"field {self.field_name}")
        if self.form_text is not None:
            parts.append(f"form {self.form_text}")
        if self.norm_text is not None:
            parts.append(f"norm {self.norm_text}")
        opts = "".join(f" --{k}={v}" for k, v in sorted(self.options.items()))
        parts.append(f"cmd {self.command}{opts}")
        return "; ".join(parts)

    # resolved objects -----------------------------------------------------
    def resolve_field(self) -> Field:
        if self.field_name is None:
            raise JobError("job has no field statement")
        return field_by_name(self.field_name)

    def form(self) -> QuadraticForm:
        if self.form_text is None:
            raise JobError("job has no form statement")
        return parse_form(self.form_text, self.resolve_field())

    def norm(self) -> Norm | None:
        if self.norm_text is None:
            return None
        basis, values = parse_norm(self.norm_text, self.resolve_field())
        return Norm(self.resolve_field(), basis, values)

    def budget(self) -> SearchBudget:
        return SearchBudget(degree=int(self.options.get("budget-degree", 6)),
                            height=int(self.options.get("budget-height", 8)))


def _pos_error(msg, text, pos):
    return LiteralError(msg, text, pos)


def _statements(text: str):
    """Split on ';' (never inside a literal), tracking start offsets."""
    out = []
    start = 0
    for m in re.finditer(r";", text + ";"):
        chunk = text[start:m.start()]
        lead = len(chunk) - len(chunk.lstrip())
        if chunk.strip():
            out.append((chunk.strip(), start + lead))
        start = m.end()
    return out


def parse_form_spec(text: str) -> JobSpec:
    """Parse ``field <name>; form <literal>; [norm <literal>;] cmd <command> [options]``."""
    seen = {}
    for stmt, pos in _statements(text):
        m = re.match(r"([A-Za-z-]+)\s*", stmt)
        key = m.group(1) if m else ""
        if key not in ("field", "form", "norm", "cmd"):
            raise _pos_error(f"unknown statement {key or stmt[:1]!r}", text, pos)
        if key in seen:
            raise _pos_error(f"repeated {key!r} statement", text, pos)
        body = stmt[m.end():].strip()
        if not body:
            raise _pos_error(f"empty {key!r} statement", text, pos)
        seen[key] = (body, pos + m.end())
    if "cmd" not in seen:
        raise _pos_error("missing 'cmd' statement", text, len(text))
    body, cpos = seen["cmd"]
    words = body.split()
    command, opts = words[0], {}
    if command not in COMMANDS:
        raise _pos_error(f"unknown command {command!r}", text, cpos)
    for w in words[1:]:
        m = re.fullmatch(r"--([a-z-]+)=(\S+)", w)
        if not m or m.group(1) not in OPTION_NAMES:
            raise _pos_error(f"bad option {w!r}", text, cpos + body.index(w))
        opts[m.group(1)] = m.group(2)
    if opts.get("route", "tame-residue") not in ROUTES:
        raise _pos_error(f"unknown route {opts['route']!r}", text, cpos)
    job = JobSpec(command, *(seen[k][0] if k in seen else None for k in ("field", "form", "norm")), options=opts)
    # validate eagerly so errors carry positions
    if job.field_name is not None:
        try:
            F = job.resolve_field()
        except FieldError as exc:
            raise _pos_error(str(exc), text, seen["field"][1]) from exc
        q = None
        if job.form_text is not None:
            try:
                q = parse_form(job.form_text, F)
            except LiteralError as exc:
                raise _pos_error(str(exc).rsplit(" at line", 1)[0], text, seen["form"][1] + exc.pos) from exc
        if job.norm_text is not None:
            try:
                basis, values = parse_norm(job.norm_text, F)
            except LiteralError as exc:
                raise _pos_error(str(exc).rsplit(" at line", 1)[0], text, seen["norm"][1] + exc.pos) from exc
            if q is not None and (len(basis) != q.dim or len(values) != q.dim):
                raise _pos_error(f"norm has dimension {len(values)} but the form has dimension {q.dim}",
                                 text, seen["norm"][1])
    elif command != "paper-example" and "certificate" not in opts:
        raise _pos_error("missing 'field' statement", text, 0)
    return job


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


@dataclass
class Report:
    status: str  # "ok" | "inconclusive" | "error"
    result: dict
    text: str
    verified: bool = False

    @property
    def exit_code(self):
        return {"ok": EXIT_OK, "inconclusive": EXIT_INCONCLUSIVE}.get(self.status, EXIT_ERROR)


def _class_json(c: TameWittClass):
    out = c.to_json()
    if c.field.characteristic == 2:
        out["bits"] = list(c.bits())
    return out


def _require_valued(F):
    if F.rank == 0:
        raise JobError(f"command needs a valued field; {F.name} has the trivial valuation")


def _norm_or_decomposition(job, q):
    alpha = job.norm()
    if alpha is not None:
        return alpha, None
    F = q.field
    if F.residue_field.characteristic != 2:
        res = is_in_Iqt(q)
        return res.norm, None
    cert = springer_tame_decompose(q)
    return (cert.tame_norm() if cert.complete and cert.verify() else None), cert


def _cmd_residue(job):
    q = job.form()
    _require_valued(q.field)
    alpha, cert = _norm_or_decomposition(job, q)
    if alpha is None:
        return Report("inconclusive", {"reason": "no tame norm given or found", "obstruction": cert.obstruction},
                      "no tame norm available")
    if not is_tame_norm(alpha, q):
        rep = check_bounded(alpha, q)
        why = rep.detail if not rep else "induced graded form is singular"
        raise JobError(f"norm is not tame for the form: {why}")
    c = residue_class(q, alpha)
    phi = induce_graded_form(q, alpha)
    return Report("ok", {"residue_class": _class_json(c), "norm": alpha.to_literal(),
                         "graded_degrees": [format_value(g) for g in phi.degrees]},
                  f"residue class {c}", verified=True)


def _cmd_witt_index(job):
    q = job.form()
    F = q.field
    if F.rank == 0:
        if not F.is_finite:
            raise JobError("witt-index over a trivially valued field needs a finite field")
        data = witt_decompose_finite(q)
        ok = len(data.basis_change) == q.dim and linalg.rank(F, data.basis_change) == q.dim
        return Report("ok", {"witt_index": data.witt_index, "method": "finite-field decomposition"},
                      f"Witt index {data.witt_index}", verified=ok)
    alpha, cert = _norm_or_decomposition(job, q)
    if alpha is None:
        found = strip_hyperbolic_planes(q, job.budget()).count
        return Report("inconclusive", {"reason": "no tame norm given or found",
                                       "obstruction": cert.obstruction if cert else None,
                                       "hyperbolic_planes_found": found},
                      f"no tame norm available; {found} hyperbolic planes found within the budget")
    i = witt_index_tame(q, alpha)
    return Report("ok", {"witt_index": i, "method": "graded witt index of a tame norm",
                         "norm": alpha.to_literal()}, f"Witt index {i}", verified=True)


def _hensel_vectors(cert, precision):
    F = cert.field
    N = ValueGroupElement((precision,) + (0,) * (F.rank - 1))
    out = []
    for s, (x, mz) in zip(cert.summands, zip(cert.basis_change[0::2], cert.basis_change[1::2])):
        if not s.split or F.is_zero(s.u):
            continue
        z = linalg.vec_scale(F, F.neg(F.one), mz)
        try:
            w = hensel_isotropic_vector(cert.form, x, z, N)
        except (PreconditionError, FieldError):
            continue
        out.append({"vector": [F.fmt(a) for a in w], "valuation_of_value": format_value(F.valuation(cert.form(w)))})
    return out


def _cmd_decompose(job):
    q = job.form()
    _require_valued(q.field)
    cert = springer_tame_decompose(q)
    data = cert.to_json()
    result = {"certificate": data, "complete": cert.complete, "obstruction": cert.obstruction}
    if "precision" in job.options and cert.complete:
        result["hensel_vectors"] = _hensel_vectors(cert, int(job.options["precision"]))
    if cert.complete:
        return Report("ok", result, f"{len(cert.summands)} blocks <a>N(u)", verified=data["verified"])
    if cert.obstruction and cert.obstruction.startswith("kernel"):
        return Report("ok", result, f"stopped at an anisotropic kernel of dimension {len(cert.kernel)}")
    return Report("inconclusive", result, "decomposition did not finish")


def _iqt_json(res):
    out = {"status": res.status, "obstruction": res.obstruction}
    if res.tame_class is not None:
        out["tame_class"] = _class_json(res.tame_class)
    if res.certificate is not None and res.certificate.complete:
        out["certificate"] = res.certificate.to_json()
    if res.norm is not None:
        out["norm"] = res.norm.to_literal()
    return out


def _cmd_tame_class(job):
    q = job.form()
    F = q.field
    _require_valued(F)
    route = job.options.get("route", "tame-residue")
    if route == "springer-t":
        from .q2_witt import in_tame_subgroup_t, two_residue_classes_t

        if not (isinstance(F, RationalFunctionField) and F.base == DYADIC):
            raise JobError("route springer-t needs Q2((t))")
        pair = two_residue_classes_t(q)
        member = in_tame_subgroup_t(q)
        return Report("ok", {"route": route, "in_tame_subgroup": member,
                             "t_residues": [list(pair.first.entries), list(pair.second.entries)]},
                      f"in tame subgroup: {member}", verified=True)
    res = is_in_Iqt(q)
    status = "inconclusive" if res.status == "inconclusive" else "ok"
    verified = res.certificate.verify() if res.certificate is not None and res.certificate.complete else res.status == "yes"
    return Report(status, dict(_iqt_json(res), route=route), f"in I_qt: {res.status}", verified=verified)


def _load_certificate(path):
    with open(path) as fh:
        data = json.load(fh)
    for key in ("result", "certificate"):
        if key in data and isinstance(data[key], dict):
            data = data[key]
    if "certificate" in data:
        data = data["certificate"]
    return DecompositionCertificate.from_json(data)


def _cmd_verify(job):
    if "certificate" in job.options:
        cert = _load_certificate(job.options["certificate"])
    else:
        q = job.form()
        _require_valued(q.field)
        cert = DecompositionCertificate.from_json(springer_tame_decompose(q).to_json())
    ok = cert.verify()
    return Report("ok" if ok else "error", {"verified": ok, "summands": len(cert.summands)},
                  f"verified: {str(ok).lower()}", verified=ok)


def paper_example_report() -> dict:
    """The tame generators over Q2((t)) and orders modulo the tame part."""
    from .q2_witt import in_tame_subgroup_t, tame_generators

    F = field_by_name("Q2((t))")
    gens = []
    for name, g in tame_generators(F).items():
        res = is_in_Iqt(g)
        c = res.tame_class
        gens.append({"name": name, "form": format_form(g), "status": res.status,
                     "residue_bits": list(c.bits()), "order": c.order(),
                     "verified": bool(res.certificate and res.certificate.verify())})
    t = F.t
    quotient = {
        "<1,t>": QuadraticForm.diagonal(F, [1, t]),
        "<1,1>": QuadraticForm.diagonal(F, [1, 1]),
        "<1,-2>": QuadraticForm.diagonal(F, [1, -2]),
        "<t><1,-2>": QuadraticForm.diagonal(F, [t, F.mul(F.from_int(-2), t)]),
    }
    table = []
    for name, g in quotient.items():
        rows, order = [], None
        acc = QuadraticForm(F, [])
        for k in range(1, 5):
            acc = acc.orthogonal_sum(g)
            res = is_in_Iqt(acc)
            cross = in_tame_subgroup_t(acc)
            rows.append({"multiple": k, "status": res.status, "springer_t": cross,
                         "verified": bool(res.certificate.verify()) if res.status == "yes" and res.certificate else
                         res.status == "no"})
            if res.status == "yes" and order is None:
                order = k
            if order is not None:
                break
        table.append({"name": name, "order_mod_Iqt": order, "multiples": rows})
    return {"generators": gens, "relations": table,
            "structure": {"I_qt": [2, 2, 2, 2],
                          "I_q/I_qt": sorted((r["order_mod_Iqt"] for r in table), reverse=True)}}


def _cmd_paper_example(job):
    data = paper_example_report()
    ok = all(g["verified"] for g in data["generators"]) and all(
        r["verified"] and (r["status"] == "yes") == r["springer_t"] for t in data["relations"] for r in t["multiples"])
    lines = ["tame generators of I_qt(F), F = Q2((t)):"]
    for g in data["generators"]:
        lines.append(f"  {g['name']:12s} residue {g['residue_bits']} order {g['order']}")
    lines.append("orders modulo I_qt(F):")
    for r in data["relations"]:
        lines.append(f"  {r['name']:12s} " + ", ".join(f"{m['multiple']}x: {m['status']}" for m in r["multiples"])
                     + f"  -> order {r['order_mod_Iqt']}")
    return Report("ok" if ok else "error", data, "\n".join(lines), verified=ok)


_DISPATCH = {
    "residue": _cmd_residue,
    "witt-index": _cmd_witt_index,
    "decompose": _cmd_decompose,
    "tame-class": _cmd_tame_class,
    "verify": _cmd_verify,
    "paper-example": _cmd_paper_example,
}


def run_command(job: JobSpec) -> Report:
    try:
        rep = _DISPATCH[job.command](job)
    except (JobError, FormError, NormError, FieldError, LiteralError, PreconditionError, OSError) as exc:
        rep = Report("error", {"error": str(exc)}, f"error: {exc}")
    rep.result = {"job": job.to_text(), "status": rep.status, "verified": rep.verified,
                  "budgets": {"degree": job.budget().degree, "height": job.budget().height,
                              "precision": job.options.get("precision")},
                  "result": rep.result}
    return rep


def to_json(rep: Report) -> str:
    return json.dumps(rep.result, sort_keys=True, indent=2, default=str)


def _env_defaults():
    out = {}
    for env, key in (("TAMEWITT_BUDGET_DEGREE", "budget-degree"), ("TAMEWITT_BUDGET_HEIGHT", "budget-height"),
                     ("TAMEWITT_PRECISION", "precision")):
        if os.environ.get(env):
            out[key] = os.environ[env]
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="tamewitt", description="Tame Witt group computations over valued fields.")
    ap.add_argument("job", nargs="?", help="job text, e.g. 'field F2((t)); form norm(1); cmd witt-index'")
    ap.add_argument("-f", "--file", help="read the job text from a file")
    ap.add_argument("--budget-degree", type=int)
    ap.add_argument("--budget-height", type=int)
    ap.add_argument("--precision", type=int, help="t-adic precision for Hensel vectors in 'decompose'")
    ap.add_argument("--route", choices=ROUTES)
    ap.add_argument("--certificate", help="certificate JSON for 'verify'")
    ap.add_argument("--json", action="store_true", help="print the JSON report")
    args = ap.parse_args(argv)
    if args.file:
        with open(args.file) as fh:
            text = fh.read()
    elif args.job:
        text = args.job
    else:
        ap.error("give a job text or -f FILE")
    try:
        job = parse_form_spec(text)
    except (LiteralError, JobError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    opts = _env_defaults()
    opts.update(job.options)
    for key in OPTION_NAMES:
        val = getattr(args, key.replace("-", "_"))
        if val is not None:
            opts[key] = str(val)
    job.options = opts
    rep = run_command(job)
    if args.json:
        print(to_json(rep))
    else:
        print(rep.text)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
