"""
Syllables and letters
=====================

Lexicon entries and graph labels are written in syllables, but every
automaton works on letters (compatibility jamo). A morpheme boundary may cut
a syllable in half, which is why the conversion has to be exact.
"""

from korlex.hangul import compose, decompose

# 컸다 'was big' splits into a stem letter, the past marker and the ending
letters = decompose("컸다")
print(list(letters))

# the stem 크 loses its vowel before -었-; only letters show the boundary
stem, past, ending = "ㅋ", "ㅓㅆ", "ㄷㅏ"
print(stem + past + ending == letters)

# composing puts the syllables back together
print(compose(stem + past + ending))

# double and complex consonants stay one letter each
print([len(decompose(s)) for s in "값싸다"])

# a lone letter has nothing to combine with
print(compose("ㅋ"), compose("ㅓㅆ"))
