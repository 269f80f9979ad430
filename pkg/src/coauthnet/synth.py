"""Seeded synthetic corpora of résumés and program rosters.

The real résumé and roster platforms are not available offline, so this
module produces stand-in corpora with the same file formats.  Structure is
planted on purpose: higher-grade programs have more researchers, publish
more intra-program joint papers and place their members last in the author
list more often.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .disambig import normalize_name, within_distance
from .errors import InvalidSpec
from .ingest import (
    DEFAULT_PERIODS,
    ROSTER_HEADER,
    EvaluationPeriod,
    Kind,
    Nature,
    Publication,
    ResumeRecord,
    serialize_resume,
)

# sample counts per grade in the reference dataset (171 program-periods)
PAPER_GRADE_COUNTS = {3: 75, 4: 58, 5: 14, 6: 9, 7: 15}

# seed of the default corpus used by the acceptance checks; frozen after
# verifying the planted grade signal survives the full pipeline
DEFAULT_CORPUS_SEED = 1

_FIRST = [
    "Ana", "André", "Beatriz", "Bruno", "Camila", "Carlos", "Cláudia", "Daniel",
    "Débora", "Eduardo", "Elisa", "Fábio", "Fernanda", "Gabriel", "Giovana",
    "Henrique", "Helena", "Igor", "Isabela", "João", "Júlia", "Leonardo",
    "Letícia", "Lucas", "Luíza", "Marcelo", "Mariana", "Nicolas", "Natália",
    "Otávio", "Patrícia", "Paulo", "Rafael", "Renata", "Sérgio", "Sofia",
    "Thiago", "Tânia", "Vinícius", "Vitória", "Wagner", "Yasmin",
]
_SURNAMES = [
    "Almeida", "Andrade", "Araújo", "Barbosa", "Barros", "Batista", "Borges",
    "Cardoso", "Carvalho", "Castro", "Correia", "Costa", "Cunha", "Dias",
    "Duarte", "Esteves", "Farias", "Fernandes", "Ferreira", "Fonseca",
    "Freitas", "Garcia", "Gomes", "Gonçalves", "Guimarães", "Lima", "Lopes",
    "Macedo", "Machado", "Martins", "Medeiros", "Melo", "Mendes", "Miranda",
    "Monteiro", "Moraes", "Moreira", "Nascimento", "Nogueira", "Oliveira",
    "Pereira", "Peixoto", "Pinheiro", "Queiroz", "Ramos", "Reis", "Ribeiro",
    "Rocha", "Sampaio", "Santana", "Siqueira", "Soares", "Souza", "Teixeira",
    "Toledo", "Valente", "Vasconcelos", "Vieira", "Xavier", "Zanetti",
]
_ADJ = [
    "Scalable", "Robust", "Efficient", "Adaptive", "Distributed", "Lightweight",
    "Probabilistic", "Incremental", "Parallel", "Secure", "Interpretable",
    "Hierarchical", "Energy-aware", "Semantic", "Dynamic", "Federated",
]
_TOPIC = [
    "graph mining", "feature selection", "code review", "query optimization",
    "image segmentation", "routing", "scheduling", "ontology alignment",
    "malware detection", "recommendation", "text classification",
    "model checking", "gene network inference", "load balancing",
    "topic modeling", "service composition", "motion planning",
]
_DOMAIN = [
    "sensor networks", "cloud platforms", "mobile devices", "e-learning",
    "smart grids", "bioinformatics", "social media", "software repositories",
    "medical imaging", "digital libraries", "vehicular networks",
]
_PROGRAM_WORDS = [
    "Computação", "Informática", "Ciência da Computação", "Sistemas de Informação",
    "Engenharia de Computação", "Computação Aplicada", "Modelagem Computacional",
]
_INSTITUTIONS = [
    "Universidade Federal", "Universidade Estadual", "Instituto Federal",
    "Universidade Tecnológica Federal", "Pontifícia Universidade Católica",
]
_STATES = [
    "do Acre", "de Alagoas", "do Amazonas", "da Bahia", "do Ceará", "de Goiás",
    "do Maranhão", "de Minas Gerais", "do Pará", "da Paraíba", "do Paraná",
    "de Pernambuco", "do Piauí", "do Rio de Janeiro", "do Rio Grande do Sul",
    "de Santa Catarina", "de São Paulo", "de Sergipe", "do Tocantins",
]


@dataclass(frozen=True)
class CorpusSpec:
    """Size and structure parameters of a synthetic corpus.

    `grade_counts` gives the number of program-period samples per grade;
    samples are spread over `n_programs` programs with grades sorted so a
    program's grade never decreases over time.
    """

    grade_counts: dict = field(default_factory=lambda: dict(PAPER_GRADE_COUNTS))
    n_programs: int = 62
    periods: tuple = DEFAULT_PERIODS
    size_by_grade: dict = field(default_factory=lambda: {3: 9, 4: 13, 5: 18, 6: 23, 7: 28})
    size_noise: int = 2
    joint_rate_by_grade: dict = field(
        default_factory=lambda: {3: 0.9, 4: 1.1, 5: 1.3, 6: 1.5, 7: 1.7}
    )
    solo_papers_per_researcher: float = 1.5
    n_professional: int = 0

    def validate(self) -> None:
        total = sum(self.grade_counts.values())
        if total < 1 or any(c < 0 for c in self.grade_counts.values()):
            raise InvalidSpec("grade counts must be non-negative with at least one sample")
        for g in self.grade_counts:
            if not 1 <= g <= 7:
                raise InvalidSpec(f"grade {g} outside [1, 7]")
            if g not in self.size_by_grade or g not in self.joint_rate_by_grade:
                raise InvalidSpec(f"no size or joint rate for grade {g}")
        if not self.periods:
            raise InvalidSpec("at least one period is required")
        if self.n_programs < 1:
            raise InvalidSpec("n_programs must be >= 1")
        if not -(-total // len(self.periods)) <= self.n_programs <= total:
            raise InvalidSpec(
                f"{total} samples cannot be spread over {self.n_programs} programs "
                f"with {len(self.periods)} periods"
            )
        if any(self.size_by_grade[g] - self.size_noise < 2 for g in self.grade_counts):
            raise InvalidSpec("every roster needs at least two researchers")
        if self.n_professional < 0:
            raise InvalidSpec("n_professional must be >= 0")


@dataclass
class Corpus:
    resumes: list[ResumeRecord]
    roster_rows: list[tuple]
    periods: tuple[EvaluationPeriod, ...]
    seed: int

    def files(self) -> dict[str, bytes]:
        """Relative path -> file content for the whole corpus."""
        out: dict[str, bytes] = {}
        for r in self.resumes:
            out[f"resumes/{r.researcher_id}.xml"] = serialize_resume(r)
        lines = [",".join(ROSTER_HEADER)]
        for row in self.roster_rows:
            lines.append(",".join(_csv_cell(c) for c in row))
        out["roster.csv"] = ("\n".join(lines) + "\n").encode("utf-8")
        periods = {"periods": [p.as_dict() for p in self.periods]}
        out["periods.json"] = (json.dumps(periods, indent=2) + "\n").encode("utf-8")
        return out

    def write(self, directory: str | Path) -> list[Path]:
        directory = Path(directory)
        written = []
        for rel, content in sorted(self.files().items()):
            path = directory / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(content)
            written.append(path)
        return written


def fixture_corpus_path() -> Path:
    """Directory of the small corpus shipped with the package."""
    return Path(__file__).resolve().parent / "data" / "fixture_corpus"


def _csv_cell(value) -> str:
    text = str(value)
    if any(c in text for c in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


class _NamePool:
    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.taken: set[str] = set()

    def draw(self, avoid: list[str], min_distance: int = 5) -> str:
        for _ in range(10_000):
            first = _FIRST[self.rng.integers(len(_FIRST))]
            s1, s2 = self.rng.choice(len(_SURNAMES), size=2, replace=False)
            name = f"{first} {_SURNAMES[s1]} {_SURNAMES[s2]}"
            norm = normalize_name(name)
            if norm in self.taken:
                continue
            if any(within_distance(norm, normalize_name(o), min_distance - 1) for o in avoid):
                continue
            self.taken.add(norm)
            return name
        raise InvalidSpec("name space exhausted")


def _variant(name: str, rng: np.random.Generator) -> str:
    """A spelling variant of `name` within normalized distance 1."""
    choice = rng.integers(4)
    if choice == 0:
        return normalize_name(name).title()
    if choice == 1:
        return name.upper()
    if choice == 2:
        return name.replace(" ", "  ")
    chars = list(name)
    idx = [i for i, c in enumerate(chars) if c.isalpha() and i > 0]
    i = idx[rng.integers(len(idx))]
    del chars[i]
    return "".join(chars)


def _position_profile(grade: int) -> tuple[float, float, float]:
    """(first, middle, last) probabilities for a program member's slot."""
    d = grade - 3
    first = 0.55 - 0.08 * d
    last = 0.12 + 0.10 * d
    return first, 1.0 - first - last, last


def _assign_slots(total: int, n_programs: int, n_periods: int) -> list[int]:
    q, r = divmod(total, n_programs)
    slots = [q + 1] * r + [q] * (n_programs - r)
    if max(slots) > n_periods:
        raise InvalidSpec("more samples per program than periods")
    return slots


def generate_corpus(seed: int, spec: CorpusSpec | None = None) -> Corpus:
    """Build a deterministic synthetic corpus for `seed`."""
    spec = spec or CorpusSpec()
    spec.validate()
    rng = np.random.default_rng(seed)
    periods = tuple(sorted(spec.periods))
    grades = sorted(g for g, c in spec.grade_counts.items() for _ in range(c))
    slots = _assign_slots(len(grades), spec.n_programs, len(periods))

    names = _NamePool(rng)
    resumes: dict[str, dict] = {}
    roster_rows: list[tuple] = []
    title_serial = 0
    next_rid = 1

    cursor = 0
    program_names: set[str] = set()
    for p_idx, n_slots in enumerate(slots):
        program_grades = grades[cursor : cursor + n_slots]
        cursor += n_slots
        # programs with fewer samples joined in later periods
        program_periods = periods[len(periods) - n_slots :]
        pid = f"P{p_idx + 1:03d}"
        while True:
            inst = f"{_INSTITUTIONS[rng.integers(len(_INSTITUTIONS))]} {_STATES[rng.integers(len(_STATES))]}"
            pname = f"{_PROGRAM_WORDS[rng.integers(len(_PROGRAM_WORDS))]} - {inst}"
            if pname not in program_names:
                program_names.add(pname)
                break

        sizes = [
            int(spec.size_by_grade[g] + rng.integers(-spec.size_noise, spec.size_noise + 1))
            for g in program_grades
        ]
        pool: list[str] = []
        for _ in range(max(sizes)):
            pool.append(names.draw(pool))
        externals: list[str] = []
        for _ in range(max(12, len(pool))):
            externals.append(names.draw(pool + externals))
        pool_ids = []
        for name in pool:
            rid = f"R{next_rid:05d}"
            next_rid += 1
            pool_ids.append(rid)
            resumes[rid] = {"name": name, "pubs": []}
        # heavy-tailed activity makes some members hubs
        activity = rng.pareto(1.5, size=len(pool)) + 0.3

        for period, grade, size in zip(program_periods, program_grades, sizes):
            members = list(range(size))
            for m in members:
                roster_rows.append(
                    (pid, pname, inst, "Computer Science", "Academic", pool[m], period.label, grade)
                )
            w = activity[members] / activity[members].sum()
            profile = _position_profile(grade)
            n_joint = int(round(size * spec.joint_rate_by_grade[grade]))
            papers: list[tuple[int, list[int]]] = []
            for _ in range(n_joint):
                owner = int(rng.choice(members, p=w))
                k = 1 + int(rng.poisson(0.4 + 0.1 * (grade - 3)))
                others = [m for m in members if m != owner]
                ow = activity[others] / activity[others].sum()
                k = min(k, len(others))
                co = [int(c) for c in rng.choice(others, size=k, replace=False, p=ow)]
                papers.append((owner, co))
            n_solo = rng.poisson(spec.solo_papers_per_researcher, size=size)
            for m in members:
                for _ in range(int(n_solo[m])):
                    papers.append((m, []))

            for owner, co in papers:
                n_ext = int(rng.integers(0, 4))
                ext = [externals[int(i)] for i in rng.choice(len(externals), size=n_ext, replace=False)]
                n_auth = 1 + len(co) + len(ext)
                if n_auth > 1:
                    slot = rng.choice(3, p=profile)
                    if slot == 1 and n_auth < 3:
                        ext.append(externals[int(rng.integers(len(externals)))])
                        while len(set(ext)) < len(ext):
                            ext[-1] = externals[int(rng.integers(len(externals)))]
                        n_auth += 1
                    others = [("int", c) for c in co] + [("ext", e) for e in ext]
                    order = rng.permutation(len(others))
                    others = [others[i] for i in order]
                    if slot == 0:
                        pos = 0
                    elif slot == 1:
                        pos = 1 + int(rng.integers(n_auth - 2))
                    else:
                        pos = n_auth - 1
                    seq = others[:pos] + [("int", owner)] + others[pos:]
                else:
                    seq = [("int", owner)]
                authors = []
                for kind_, who in seq:
                    if kind_ == "ext":
                        authors.append(who)
                    elif who != owner and rng.random() < 0.15:
                        authors.append(_variant(pool[who], rng))
                    else:
                        authors.append(pool[who])
                title_serial += 1
                title = (
                    f"{_ADJ[rng.integers(len(_ADJ))]} {_TOPIC[rng.integers(len(_TOPIC))]} "
                    f"for {_DOMAIN[rng.integers(len(_DOMAIN))]}, study {title_serial}"
                )
                pub = Publication(
                    title=title,
                    year=int(rng.integers(period.start_year, period.end_year + 1)),
                    kind=Kind.EVENT if rng.random() < 0.7 else Kind.JOURNAL,
                    nature=Nature.COMPLETE if rng.random() < 0.9 else Nature.OTHER,
                    authors=tuple(authors),
                )
                resumes[pool_ids[owner]]["pubs"].append(pub)
                for c in co:
                    if rng.random() < 0.9:
                        resumes[pool_ids[c]]["pubs"].append(pub)

    for p_idx in range(spec.n_professional):
        pid = f"X{p_idx + 1:03d}"
        pname = f"Mestrado Profissional em Computação {p_idx + 1}"
        for period in periods:
            for m in range(3):
                roster_rows.append(
                    (pid, pname, "Instituto Federal", "Computer Science", "Professional",
                     f"Profissional {p_idx + 1}-{m + 1}", period.label, 3)
                )

    records = [
        ResumeRecord(rid, d["name"], tuple(sorted(d["pubs"], key=lambda p: (p.year, p.title))))
        for rid, d in resumes.items()
    ]
    return Corpus(records, roster_rows, periods, seed)
