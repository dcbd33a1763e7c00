"""Exact linear algebra over a field and over Z (lattices)."""


__all__ = ["Echelon", "rank", "nullspace", "IntLattice"]


class Echelon:
    """Incremental row echelon form that remembers how each row was built.

    Vectors are dicts index -> nonzero field element. `add` returns None when
    the vector is independent of earlier ones (and stores it), otherwise the
    dependency as a dict {label: coefficient} with vector == sum(coef * vector(label)).
    """

    def __init__(self, one):
        self.one = one
        self.rows = {}  # pivot -> (row dict, combo dict)

    def reduce(self, vec, combo=None):
        vec = dict(vec)
        combo = dict(combo or {})
        for piv in sorted(self.rows):
            c = vec.get(piv)
            if not c:
                continue
            row, rc = self.rows[piv]
            for k, v in row.items():
                nv = vec.get(k, 0) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in rc.items():
                nv = combo.get(k, 0) - c * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return vec, combo

    def add(self, vec, label):
        """Insert vec; return None if independent, else the dependency."""
        vec = {k: v for k, v in vec.items() if v}
        red, combo = self.reduce(vec, {label: self.one})
        if not red:
            # red == vec - sum(...) == 0  ->  vec = -sum over other labels / coef
            coef = combo.pop(label)
            return {k: -v / coef for k, v in combo.items()}
        piv = min(red)
        inv = self.one / red[piv]
        row = {k: v * inv for k, v in red.items()}
        rc = {k: v * inv for k, v in combo.items()}
        # keep existing rows reduced at the new pivot
        for p, (r, c) in list(self.rows.items()):
            f = r.get(piv)
            if f:
                for k, v in row.items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
                for k, v in rc.items():
                    nv = c.get(k, 0) - f * v
                    if nv:
                        c[k] = nv
                    else:
                        c.pop(k, None)
        self.rows[piv] = (row, rc)
        return None

    def contains(self, vec):
        """Return combination dict over stored labels if vec is in the span, else None."""
        red, combo = self.reduce({k: v for k, v in vec.items() if v})
        if red:
            return None
        return {k: -v for k, v in combo.items()}

    @property
    def rank(self):
        return len(self.rows)


def rank(vectors, one):
    e = Echelon(one)
    for i, v in enumerate(vectors):
        e.add(v, i)
    return e.rank


def nullspace(vectors, one):
    """Basis of {c : sum c_i * vectors[i] = 0}, as dicts i -> coefficient."""
    e = Echelon(one)
    out = []
    for i, v in enumerate(vectors):
        dep = e.add(v, i)
        if dep is not None:
            rel = {k: -c for k, c in dep.items()}
            rel[i] = one
            out.append(rel)
    return out


class IntLattice:
    """Row-style Hermite reduction of integer vectors (dicts index -> int).

    Tracks, for each basis row, its expression in the inserted labels, so a
    membership answer comes with an integer certificate.
    """

    def __init__(self):
        self.rows = {}  # pivot -> (row, combo)

    def insert(self, vec, label):
        vec = {k: v for k, v in vec.items() if v}
        combo = {label: 1}
        while vec:
            piv = min(vec)
            if piv not in self.rows:
                if vec[piv] < 0:
                    vec = {k: -v for k, v in vec.items()}
                    combo = {k: -v for k, v in combo.items()}
                self.rows[piv] = (vec, combo)
                return
            row, rc = self.rows[piv]
            a, b = row[piv], vec[piv]
            g, x, y = _xgcd(a, b)
            # pivot row becomes x*row + y*vec; the remainder has a zero at piv
            self.rows[piv] = (_lin(row, x, vec, y), _lin(rc, x, combo, y))
            vec, combo = _lin(row, b // g, vec, -(a // g)), _lin(rc, b // g, combo, -(a // g))

    def find(self, vec):
        """Integer combination of inserted labels equal to vec, or None."""
        vec = {k: v for k, v in vec.items() if v}
        combo = {}
        for piv in sorted(self.rows):
            c = vec.get(piv)
            if not c:
                continue
            row, rc = self.rows[piv]
            if c % row[piv]:
                return None
            q = c // row[piv]
            _axpy(vec, row, -q)
            _axpy(combo, rc, q)
        if vec:
            return None
        return combo

    def basis_signature(self):
        """Canonical Hermite form rows (for lattice equality tests)."""
        piv_sorted = sorted(self.rows)
        rows = {p: dict(self.rows[p][0]) for p in piv_sorted}
        for i, p in enumerate(piv_sorted):
            for q in piv_sorted[:i]:
                c = rows[q].get(p, 0)
                if c:
                    k = c // rows[p][p]
                    _axpy(rows[q], rows[p], -k)
        return tuple((p, tuple(sorted(rows[p].items()))) for p in piv_sorted)

    @property
    def rank(self):
        return len(self.rows)


def _axpy(y, x, a):
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def _lin(u, a, v, b):
    out = {}
    for k, x in u.items():
        out[k] = a * x
    for k, x in v.items():
        out[k] = out.get(k, 0) + b * x
    return {k: x for k, x in out.items() if x}


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
