"""The construction run for one input: tower, group, cover, X, checks.

Each stage is computed once on first use and timed; later stages pull in the
earlier ones they need.
"""

import time

from .errors import CandidateError, InternalInvariantError, NotGalois
from .aut_checker.checker import compute_aut, essentially_equal_probe, iso_check, qgc_check
from .field_tower.ops import quasi_galois_check, validate_nice_basis
from .galois_engine.galois import enumerate_gal, fixed_field_certify
from .scheme_builder.inputs import load_model_spec, parse_model_input
from .scheme_builder.model import (
    build_model, conjugate_charts, invariant_subring_probe, make_x_cover, make_y_cover,
    validate_cover,
)

__all__ = ["Pipeline"]


class Pipeline:
    """Lazily evaluated stages for one ModelSpec."""

    def __init__(self, spec):
        self.spec = spec
        self.timings = {}
        self._cache = {}

    @classmethod
    def from_text(cls, text):
        return cls(parse_model_input(text))

    @classmethod
    def from_path(cls, path):
        return cls(load_model_spec(path))

    def _stage(self, name, fn):
        if name not in self._cache:
            t0 = time.perf_counter()
            self._cache[name] = fn()
            self.timings[name] = round((time.perf_counter() - t0) * 1000)
        return self._cache[name]

    def done(self, name):
        return name in self._cache

    # field and group ----------------------------------------------------
    @property
    def tower(self):
        return self._stage("tower", self.spec.tower)

    @property
    def group(self):
        return self._stage("galois", lambda: enumerate_gal(self.tower))

    @property
    def fixed_field(self):
        return self._stage("fixed_field", lambda: fixed_field_certify(self.group, self.tower))

    def require_galois(self):
        v = self.fixed_field
        if not v.is_galois:
            raise NotGalois(v.fixed_dimension, v.degree)
        return v

    @property
    def quasi_galois(self):
        return self._stage("quasi_galois", lambda: quasi_galois_check(self.tower))

    # cover and model ----------------------------------------------------
    @property
    def nice_basis(self):
        return self._stage("nice_basis", lambda: [self.tower.nf(t) for t in self.spec.nice_basis_texts()])

    @property
    def nice_basis_report(self):
        return self._stage("nice_basis_check", lambda: validate_nice_basis(self.tower, self.nice_basis))

    def require_nice_basis(self):
        rep = self.nice_basis_report
        if not rep.passed:
            failed = [k for k, v in rep.clauses.items() if not v]
            raise CandidateError(f"nice basis rejected: clause(s) {', '.join(failed)} fail")
        return rep

    @property
    def cover_y(self):
        return self._stage("cover_y", lambda: make_y_cover(self.spec, self.tower))

    @property
    def cover_report(self):
        return self._stage("validate_cover", lambda: validate_cover(self.cover_y, self.tower))

    @property
    def model(self):
        def build():
            self.require_galois()
            self.require_nice_basis()
            self.cover_report
            if self.spec.x_charts is not None:
                return make_x_cover(self.spec, self.tower, self.group, self.cover_y)
            return build_model(self.cover_y, self.tower, self.group, self.nice_basis)
        return self._stage("model", build)

    # checks ---------------------------------------------------------------
    @property
    def aut(self):
        return self._stage("aut", lambda: compute_aut(self.model))

    @property
    def iso(self):
        def run():
            rep = iso_check(self.aut, self.group)
            if self.model.constructed and not rep.passed:
                raise InternalInvariantError("Aut(X/Y) differs from Gal(L/K) on a constructed model")
            return rep
        return self._stage("iso", run)

    @property
    def qgc(self):
        def run():
            v = qgc_check(self.model, self.group)
            if self.model.constructed and v.verdict == "refuted":
                raise InternalInvariantError("constructed model is not quasi-galois closed")
            return v
        return self._stage("qgc", run)

    @property
    def invariant_probes(self):
        def run():
            out = {}
            m = self.model
            for xc in m.cover_x.all_charts():
                yc = self.cover_y.chart(m.chart_map[xc.name])
                out[xc.name] = invariant_subring_probe(xc.ring, self.group, yc.ring,
                                                       delta=m.delta if m.constructed else None)
            return out
        return self._stage("invariant_probes", run)

    @property
    def essential_probes(self):
        """Each X-chart against each of its distinct Galois conjugates."""
        def run():
            out = {}
            for xc in self.model.cover_x.all_charts():
                cs = conjugate_charts(xc.ring, self.group)
                out[xc.name] = [essentially_equal_probe(xc.ring, r) for r in cs.rings]
            return out
        return self._stage("essential_probes", run)
