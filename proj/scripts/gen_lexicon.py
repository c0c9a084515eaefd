#!/usr/bin/env python3
"""Regenerates src/lexical/lexicon_words.inc from the wordfreq English list."""
import re
import sys

import wordfreq

LIMIT = 25000


def main(path):
    words = sorted({w for w in wordfreq.top_n_list("en", LIMIT)
                    if re.fullmatch("[a-z]+", w) and (len(w) > 1 or w in ("a", "i"))})
    with open(path, "w", encoding="utf-8") as out:
        out.write("// Generated by scripts/gen_lexicon.py; do not edit.\n")
        out.write("// Common English words, one per line.\n")
        line = []
        out.write("static constexpr const char* kLexiconChunks[] = {\n")
        for i in range(0, len(words), 400):
            out.write('    R"(' + "\n".join(words[i:i + 400]) + ')",\n')
        out.write("};\n")
    print(len(words), "words", file=sys.stderr)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/lexical/lexicon_words.inc")
