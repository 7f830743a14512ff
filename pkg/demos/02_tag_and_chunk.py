"""Part-of-speech tagging and shallow chunking.

The bundled averaged-perceptron model tags a few sentences with both the
coarse (UPOS) and fine-grained (XPOS) tagsets, and the chunker then
reads NP / VP / dependent-clause spans off the XPOS sequence.
"""
from styleprof.annotate import chunk, default_model, tag
from styleprof.corpus import Sentence

SENTENCES = [
    "The quick brown fox jumped over the lazy dog .",
    "She will read the long book that he wrote .",
    "My old friend quietly opened the heavy wooden door .",
]

model = default_model()

for raw in SENTENCES:
    tagged = tag(Sentence.from_raw(raw), model)
    words = tagged.sentence.surfaces()
    print(raw)
    print("  " + " ".join(f"{w}/{t.upos}" for w, t in zip(words, tagged.tags)))
    print("  " + " ".join(f"{w}/{t.xpos}" for w, t in zip(words, tagged.tags)))

    # Chunk spans are greedy and non-overlapping within each kind.
    for span in chunk(tagged):
        words = " ".join(t.surface for t in tagged.sentence.tokens[span.start : span.end])
        print(f"  {span.kind:9} [{span.start}:{span.end}]  {words}")
    print()
