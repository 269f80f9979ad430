"""Résumé and roster parsing, publication filtering and period handling.

Résumé records are small XML documents::

    <curriculum researcher-id="R0001">
      <general-data>
        <full-name>Ana Souza</full-name>
      </general-data>
      <productions>
        <publication kind="EVENT" nature="COMPLETE" title="..." year="2008">
          <author name="Ana Souza"/>
          <author name="Bruno Lima"/>
        </publication>
      </productions>
    </curriculum>

Rosters are CSV tables with one row per (program, researcher, period).
"""
from __future__ import annotations

import csv
import io
import json
import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .disambig import normalize_name
from .errors import MalformedRecord, MalformedTable, MissingName, UnknownModality

log = logging.getLogger(__name__)

ROSTER_HEADER = [
    "program_id",
    "program_name",
    "institution",
    "area",
    "modality",
    "researcher_name",
    "period_label",
    "grade",
]


class Kind(Enum):
    EVENT = "EVENT"
    JOURNAL = "JOURNAL"


class Nature(Enum):
    COMPLETE = "COMPLETE"
    OTHER = "OTHER"


class Modality(Enum):
    ACADEMIC = "Academic"
    PROFESSIONAL = "Professional"

    @classmethod
    def parse(cls, text: str) -> "Modality":
        for m in cls:
            if m.value.lower() == text.strip().lower():
                return m
        raise UnknownModality(f"unknown modality {text!r}")


@dataclass(frozen=True)
class Publication:
    title: str
    year: int
    kind: Kind
    nature: Nature
    authors: tuple[str, ...]

    def __post_init__(self):
        if not self.authors:
            raise ValueError("a publication needs at least one author")
        if not 1900 <= self.year <= 2100:
            raise ValueError(f"year {self.year} out of range")


@dataclass(frozen=True)
class ResumeRecord:
    researcher_id: str
    full_name: str
    publications: tuple[Publication, ...] = ()
    # publications dropped while parsing (no year, no nature, unknown kind)
    skipped: int = field(default=0, compare=False)


@dataclass(frozen=True, order=True)
class EvaluationPeriod:
    start_year: int
    end_year: int
    label: str

    def __post_init__(self):
        if self.start_year > self.end_year:
            raise ValueError(f"period {self.label}: start after end")

    def contains(self, year: int) -> bool:
        return self.start_year <= year <= self.end_year

    def as_dict(self) -> dict:
        return {"label": self.label, "start_year": self.start_year, "end_year": self.end_year}


DEFAULT_PERIODS = (
    EvaluationPeriod(2007, 2009, "2007-2009"),
    EvaluationPeriod(2010, 2012, "2010-2012"),
    EvaluationPeriod(2013, 2016, "2013-2016"),
)


@dataclass
class ProgramRoster:
    program_id: str
    program_name: str
    institution: str
    area: str
    modality: Modality
    researcher_names: list[str]
    grades: dict[str, int]
    # period label -> names listed for that period
    period_members: dict[str, list[str]] = field(default_factory=dict)

    def members(self, period_label: str) -> list[str]:
        """Researchers listed for one period, or the whole roster if the
        period has no explicit membership."""
        return list(self.period_members.get(period_label, self.researcher_names))


# --------------------------------------------------------------------------
# résumés


def _text(elem: ET.Element | None) -> str:
    return (elem.text or "").strip() if elem is not None else ""


def parse_resume(raw: bytes | str) -> ResumeRecord:
    """Parse one résumé record.

    Publications without a year or nature, or with a kind outside
    EVENT/JOURNAL, are dropped and counted in ``ResumeRecord.skipped``.
    """
    try:
        root = ET.fromstring(raw)
    except ET.ParseError as exc:
        raise MalformedRecord(f"unparseable record: {exc}") from exc
    rid = (root.get("researcher-id") or "").strip()
    if not rid:
        raise MalformedRecord("record has no researcher-id attribute")
    general = root.find("general-data")
    name_elem = general.find("full-name") if general is not None else None
    full_name = _text(name_elem)
    if not full_name:
        raise MissingName(f"record {rid} has no full-name")

    pubs: list[Publication] = []
    skipped = 0
    productions = root.find("productions")
    for p in productions.iter("publication") if productions is not None else ():
        authors = tuple(
            (a.get("name") or "").strip() for a in p.findall("author") if (a.get("name") or "").strip()
        )
        year_text = (p.get("year") or "").strip()
        kind_text = (p.get("kind") or "").strip().upper()
        nature_text = (p.get("nature") or "").strip().upper()
        if not year_text or not nature_text or kind_text not in Kind.__members__:
            skipped += 1
            continue
        if nature_text not in Nature.__members__:
            nature_text = "OTHER"
        try:
            pubs.append(
                Publication(
                    title=(p.get("title") or "").strip(),
                    year=int(year_text),
                    kind=Kind[kind_text],
                    nature=Nature[nature_text],
                    authors=authors,
                )
            )
        except ValueError as exc:
            raise MalformedRecord(f"record {rid}: bad publication: {exc}") from exc
    if skipped:
        log.warning("record %s: dropped %d incomplete publications", rid, skipped)
    return ResumeRecord(rid, full_name, tuple(pubs), skipped)


def serialize_resume(record: ResumeRecord) -> bytes:
    """Inverse of :func:`parse_resume` (modulo dropped publications)."""
    root = ET.Element("curriculum", {"researcher-id": record.researcher_id})
    general = ET.SubElement(root, "general-data")
    ET.SubElement(general, "full-name").text = record.full_name
    prods = ET.SubElement(root, "productions")
    for pub in record.publications:
        p = ET.SubElement(
            prods,
            "publication",
            {
                "kind": pub.kind.value,
                "nature": pub.nature.value,
                "title": pub.title,
                "year": str(pub.year),
            },
        )
        for a in pub.authors:
            ET.SubElement(p, "author", {"name": a})
    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


def load_resumes(directory: str | Path) -> list[ResumeRecord]:
    """Parse every ``*.xml`` file in `directory`, in sorted file order."""
    paths = sorted(Path(directory).glob("*.xml"))
    records = [parse_resume(p.read_bytes()) for p in paths]
    seen: set[str] = set()
    for r in records:
        if r.researcher_id in seen:
            raise MalformedRecord(f"duplicate researcher id {r.researcher_id}")
        seen.add(r.researcher_id)
    return records


# --------------------------------------------------------------------------
# rosters


def parse_rosters(
    raw: bytes | str,
    area_filter: str | None = "Computer Science",
    modality_filter: Modality | None = Modality.ACADEMIC,
) -> list[ProgramRoster]:
    """Parse a roster table into one :class:`ProgramRoster` per program.

    Rows outside `area_filter` (case-insensitive) or `modality_filter` are
    dropped; ``None`` disables a filter.  Repeated (program, researcher)
    rows collapse into one roster entry.
    """
    text = raw.decode("utf-8-sig") if isinstance(raw, bytes) else raw
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedTable("empty roster table") from None
    if [h.strip() for h in header] != ROSTER_HEADER:
        raise MalformedTable(f"unexpected roster header {header}")

    rosters: dict[str, ProgramRoster] = {}
    seen_names: dict[str, set[str]] = {}
    seen_period: dict[tuple[str, str], set[str]] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(ROSTER_HEADER):
            raise MalformedTable(f"line {lineno}: expected {len(ROSTER_HEADER)} fields, got {len(row)}")
        pid, pname, inst, area, modality, rname, plabel, grade_text = (c.strip() for c in row)
        mod = Modality.parse(modality)
        if area_filter is not None and area.lower() != area_filter.lower():
            continue
        if modality_filter is not None and mod is not modality_filter:
            continue
        if not pid or not rname or not plabel:
            raise MalformedTable(f"line {lineno}: empty program, researcher or period")
        try:
            grade = int(grade_text)
        except ValueError:
            raise MalformedTable(f"line {lineno}: grade {grade_text!r} is not an integer") from None
        if not 1 <= grade <= 7:
            raise MalformedTable(f"line {lineno}: grade {grade} outside [1, 7]")

        roster = rosters.get(pid)
        if roster is None:
            roster = rosters[pid] = ProgramRoster(pid, pname, inst, area, mod, [], {})
            seen_names[pid] = set()
        if roster.grades.setdefault(plabel, grade) != grade:
            raise MalformedTable(f"line {lineno}: conflicting grades for {pid} in {plabel}")
        key = normalize_name(rname)
        if key not in seen_names[pid]:
            seen_names[pid].add(key)
            roster.researcher_names.append(rname)
        members = seen_period.setdefault((pid, plabel), set())
        if key not in members:
            members.add(key)
            roster.period_members.setdefault(plabel, []).append(rname)
    return list(rosters.values())


def write_roster_table(rows: Iterable[Sequence], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(ROSTER_HEADER)
        w.writerows(rows)


# --------------------------------------------------------------------------
# periods and filtering


def filter_publications(pubs: Iterable[Publication], period: EvaluationPeriod) -> list[Publication]:
    """Complete event papers and journal articles published within `period`
    (both bounds inclusive), in input order."""
    return [
        p
        for p in pubs
        if p.nature is Nature.COMPLETE
        and p.kind in (Kind.EVENT, Kind.JOURNAL)
        and period.contains(p.year)
    ]


def parse_periods(data: list[dict]) -> list[EvaluationPeriod]:
    periods = [EvaluationPeriod(int(d["start_year"]), int(d["end_year"]), str(d["label"])) for d in data]
    ordered = sorted(periods)
    for a, b in zip(ordered, ordered[1:]):
        if b.start_year <= a.end_year:
            raise ValueError(f"periods {a.label} and {b.label} overlap")
    if len({p.label for p in periods}) != len(periods):
        raise ValueError("period labels must be unique")
    return periods


def load_periods(path: str | Path) -> list[EvaluationPeriod]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, dict):
        data = data["periods"]
    return parse_periods(data)
