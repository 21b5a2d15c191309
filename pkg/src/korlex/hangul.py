"""Conversion between Hangul syllables and compatibility-jamo letters.

Every automaton in the package runs over letters, not syllables. A letter
string is a plain ``str`` whose Hangul characters are compatibility jamo
(U+3131..U+3163); any other character stands for itself. Double consonants
(ㅆ) and complex tails (ㄳ) are single letters.
"""

import unicodedata

SBASE = 0xAC00
SLAST = 0xD7A3
N_LEADS = 19
N_VOWELS = 21
N_TAILS = 28  # including "no tail"

LEADS = "ㄱㄲㄴㄷㄸㄹㅁㅂㅃㅅㅆㅇㅈㅉㅊㅋㅌㅍㅎ"
VOWELS = "ㅏㅐㅑㅒㅓㅔㅕㅖㅗㅘㅙㅚㅛㅜㅝㅞㅟㅠㅡㅢㅣ"
TAILS = "ㄱㄲㄳㄴㄵㄶㄷㄹㄺㄻㄼㄽㄾㄿㅀㅁㅂㅄㅅㅆㅇㅈㅊㅋㅌㅍㅎ"

assert len(LEADS) == N_LEADS and len(VOWELS) == N_VOWELS and len(TAILS) == N_TAILS - 1

_LEAD_INDEX = {c: i for i, c in enumerate(LEADS)}
_VOWEL_INDEX = {c: i for i, c in enumerate(VOWELS)}
_TAIL_INDEX = {c: i + 1 for i, c in enumerate(TAILS)}

# precomputed per-syllable decompositions; 11,172 short strings
_SYLLABLE_LETTERS = {}
for _code in range(SBASE, SLAST + 1):
    _idx = _code - SBASE
    _tail = _idx % N_TAILS
    _SYLLABLE_LETTERS[chr(_code)] = (
        LEADS[_idx // (N_VOWELS * N_TAILS)]
        + VOWELS[(_idx // N_TAILS) % N_VOWELS]
        + (TAILS[_tail - 1] if _tail else "")
    )
del _code, _idx, _tail

_DECOMPOSE_TABLE = str.maketrans(_SYLLABLE_LETTERS)


def is_syllable(char):
    return SBASE <= ord(char) <= SLAST


def is_lead(letter):
    return letter in _LEAD_INDEX


def is_vowel(letter):
    return letter in _VOWEL_INDEX


def is_tail(letter):
    return letter in _TAIL_INDEX


def decompose(text):
    """Convert syllabic text to a letter string.

    Input is NFC-normalized first, so conjoining-jamo sequences that form a
    valid syllable are treated as that syllable. Non-Hangul characters pass
    through unchanged.

    >>> list(decompose("컸"))
    ['ㅋ', 'ㅓ', 'ㅆ']
    """
    if not text:
        return ""
    if not text.isascii():
        text = unicodedata.normalize("NFC", text)
    return text.translate(_DECOMPOSE_TABLE)


def compose_syllable(lead, vowel, tail=""):
    code = SBASE + (_LEAD_INDEX[lead] * N_VOWELS + _VOWEL_INDEX[vowel]) * N_TAILS
    if tail:
        code += _TAIL_INDEX[tail]
    return chr(code)


def compose(letters):
    """Recompose a letter string into syllables where possible.

    A lead followed by a vowel opens a syllable. The next letter is taken as
    its tail only if it is a valid tail and does not itself open the next
    syllable (i.e. is not followed by a vowel). Letters that cannot take part
    in a syllable are emitted as they are.

    >>> compose("ㄱㅏㄴㅏ")
    '가나'
    >>> compose("ㅏ")
    'ㅏ'
    """
    out = []
    i = 0
    n = len(letters)
    while i < n:
        c = letters[i]
        if c in _LEAD_INDEX and i + 1 < n and letters[i + 1] in _VOWEL_INDEX:
            v = letters[i + 1]
            i += 2
            tail = ""
            if i < n and letters[i] in _TAIL_INDEX:
                if not (i + 1 < n and letters[i + 1] in _VOWEL_INDEX and letters[i] in _LEAD_INDEX):
                    tail = letters[i]
                    i += 1
            out.append(compose_syllable(c, v, tail))
        else:
            out.append(c)
            i += 1
    return "".join(out)
