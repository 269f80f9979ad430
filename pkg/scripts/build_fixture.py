"""Regenerate the bundled fixture corpus under src/coauthnet/data/fixture_corpus.

Five academic programs (one per grade 3..7) over three periods, one
professional program that the default filters drop, and one hand-written
résumé (resume_0001) that exercises the parser's skip rules.
"""
import shutil
from pathlib import Path

from coauthnet.synth import CorpusSpec, generate_corpus

SEED = 7
DEST = Path(__file__).resolve().parents[1] / "src" / "coauthnet" / "data" / "fixture_corpus"

RESUME_0001 = """<?xml version='1.0' encoding='utf-8'?>
<curriculum researcher-id="resume_0001">
  <general-data>
    <full-name>Marília Antunes Köhler</full-name>
  </general-data>
  <productions>
    <publication kind="EVENT" nature="COMPLETE" title="Sparse graph sketches" year="2008">
      <author name="Marília Antunes Köhler" />
      <author name="Sofia Barbosa Dias" />
    </publication>
    <publication kind="JOURNAL" nature="COMPLETE" title="Streaming community detection" year="2009">
      <author name="Camila Lopes Araujo" />
      <author name="Marília Antunes Köhler" />
    </publication>
    <publication kind="EVENT" nature="OTHER" title="Extended abstract on sketches" year="2008">
      <author name="Marília Antunes Köhler" />
    </publication>
    <publication kind="EVENT" nature="COMPLETE" title="A note on degree sequences" year="2011">
      <author name="Marília Antunes Köhler" />
    </publication>
    <publication kind="EVENT" nature="COMPLETE" title="Temporal motifs in citation data" year="2012">
      <author name="Otto Weissmann Brandt" />
      <author name="MARILIA ANTUNES KOHLER" />
      <author name="Hana Kobayashi Sato" />
    </publication>
    <publication kind="JOURNAL" nature="COMPLETE" title="Co-authorship growth models" year="2014">
      <author name="Sofia Barbosa Dias" />
      <author name="Marília Antunes Köhler" />
      <author name="Camila Lopes Araújo" />
    </publication>
    <publication kind="EVENT" nature="COMPLETE" title="Rich clubs in small programs" year="2016">
      <author name="Otto Weissmann Brandt" />
      <author name="Marília Antunes Köhler" />
    </publication>
    <publication kind="EVENT" nature="COMPLETE" title="Vulnerability of research groups" year="2013">
      <author name="Marília Antunes Köhler" />
      <author name="Hana Kobayashi Sato" />
    </publication>
    <publication kind="JOURNAL" nature="OTHER" title="Editorial" year="2015">
      <author name="Marília Antunes Köhler" />
    </publication>
    <publication kind="EVENT" nature="COMPLETE" title="Early work on name matching" year="2006">
      <author name="Marília Antunes Köhler" />
      <author name="Sofia Barbosa Dias" />
    </publication>
    <publication kind="EVENT" nature="COMPLETE" title="Levenshtein filters for rosters" year="2010">
      <author name="Sofia Barbosa Dias" />
      <author name="Marília Antunes Köhler" />
    </publication>
    <publication kind="JOURNAL" nature="COMPLETE" title="Late results" year="2017">
      <author name="Marília Antunes Köhler" />
    </publication>
    <publication kind="EVENT" nature="COMPLETE" title="Undated preprint">
      <author name="Marília Antunes Köhler" />
    </publication>
    <publication kind="EVENT" title="Paper without nature" year="2011">
      <author name="Marília Antunes Köhler" />
    </publication>
    <publication kind="BOOK" nature="COMPLETE" title="A book chapter" year="2012">
      <author name="Marília Antunes Köhler" />
    </publication>
  </productions>
</curriculum>
"""


def main() -> None:
    spec = CorpusSpec(grade_counts={3: 3, 4: 3, 5: 3, 6: 3, 7: 3}, n_programs=5, n_professional=1)
    corpus = generate_corpus(SEED, spec)
    p001 = next(r for r in corpus.roster_rows if r[0] == "P001")
    labels = sorted({r[6] for r in corpus.roster_rows if r[0] == "P001"})
    for label in labels:
        grade = next(r[7] for r in corpus.roster_rows if r[0] == "P001" and r[6] == label)
        corpus.roster_rows.append((*p001[:5], "Marília Antunes Köhler", label, grade))
    if DEST.exists():
        shutil.rmtree(DEST)
    corpus.write(DEST)
    (DEST / "resumes" / "resume_0001.xml").write_text(RESUME_0001, encoding="utf-8")


if __name__ == "__main__":
    main()
