#!/usr/bin/env python3
"""Regenerates the bundled data files under crates/core/data/.

    python3 tools/gen_fixtures.py [--tiktoken path/to/multilingual.tiktoken]

The corpora, lexicon, dataset and prompt templates are produced from the
aligned phrase table below, so every word of every corpus has a dictionary
entry in all four languages. The byte-level fixture vocabulary is a
stratified sample of the MIT-licensed multilingual BPE vocabulary shipped
with openai-whisper; it is only rebuilt when --tiktoken is given.
"""

import argparse
import base64
import json
import random
import unicodedata
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "crates" / "core" / "data"
LANGS = ["en", "zh", "ar", "ru"]

# key -> (en, zh, ar, ru)
FUNCTION = {
    "the": ("the", "这", "هذا", "этот"),
    "is": ("is", "是", "هو", "это"),
    "in": ("in", "在", "في", "в"),
    "a": ("a", "一个", "واحد", "один"),
    "has": ("has", "有", "لديها", "есть"),
    "answer": ("answer", "答案", "الجواب", "ответ"),
    "visit": ("visit", "参观", "يزورون", "посещают"),
    "every": ("every", "每", "كل", "каждый"),
    "of": ("of", "的", "من", "из"),
    "very": ("very", "非常", "جدا", "очень"),
    "many": ("many", "很多", "كثير", "многие"),
    "live": ("live", "住", "يعيش", "живут"),
    "built": ("was built", "建于", "بني", "был построен"),
    "where": ("where", "哪里", "أين", "где"),
    "and": ("and", "和", "و", "и"),
    "are": ("are", "都是", "هي", "являются"),
    "cities": ("cities", "城市", "مدن", "города"),
    "located": ("located", "位于", "يقع", "находится"),
    "year": ("year", "年", "عام", "году"),
}

PLACES = {
    "paris": ("paris", "巴黎", "باريس", "париж"),
    "london": ("london", "伦敦", "لندن", "лондон"),
    "beijing": ("beijing", "北京", "بكين", "пекин"),
    "moscow": ("moscow", "莫斯科", "موسكو", "москва"),
    "cairo": ("cairo", "开罗", "القاهرة", "каир"),
    "tokyo": ("tokyo", "东京", "طوكيو", "токио"),
    "rome": ("rome", "罗马", "روما", "рим"),
    "berlin": ("berlin", "柏林", "برلين", "берлин"),
    "madrid": ("madrid", "马德里", "مدريد", "мадрид"),
    "shanghai": ("shanghai", "上海", "شنغهاي", "шанхай"),
}

NOUNS = {
    "river": ("river", "河", "نهر", "река"),
    "mountain": ("mountain", "山", "جبل", "гора"),
    "museum": ("museum", "博物馆", "متحف", "музей"),
    "bridge": ("bridge", "桥", "جسر", "мост"),
    "library": ("library", "图书馆", "مكتبة", "библиотека"),
    "university": ("university", "大学", "جامعة", "университет"),
    "market": ("market", "市场", "سوق", "рынок"),
    "park": ("park", "公园", "حديقة", "парк"),
    "tower": ("tower", "塔", "برج", "башня"),
    "lake": ("lake", "湖", "بحيرة", "озеро"),
    "palace": ("palace", "宫殿", "قصر", "дворец"),
    "station": ("station", "车站", "محطة", "вокзал"),
    "garden": ("garden", "花园", "بستان", "сад"),
    "square": ("square", "广场", "ميدان", "площадь"),
    "hospital": ("hospital", "医院", "مستشفى", "больница"),
    "school": ("school", "学校", "مدرسة", "школа"),
}

ADJS = {
    "big": ("big", "大", "كبير", "большой"),
    "small": ("small", "小", "صغير", "маленький"),
    "old": ("old", "古老", "قديم", "старый"),
    "new": ("new", "新", "جديد", "новый"),
    "famous": ("famous", "著名", "مشهور", "известный"),
    "beautiful": ("beautiful", "美丽", "جميل", "красивый"),
    "quiet": ("quiet", "安静", "هادئ", "тихий"),
    "busy": ("busy", "繁忙", "مزدحم", "оживлённый"),
    "long": ("long", "长", "طويل", "длинный"),
    "high": ("high", "高", "مرتفع", "высокий"),
}

PEOPLE = {
    "people": ("people", "人们", "الناس", "люди"),
    "students": ("students", "学生", "الطلاب", "студенты"),
    "tourists": ("tourists", "游客", "السياح", "туристы"),
    "families": ("families", "家庭", "العائلات", "семьи"),
    "workers": ("workers", "工人", "العمال", "рабочие"),
}

TIMES = {
    "day": ("day", "天", "يوم", "день"),
    "summer": ("summer", "夏天", "صيف", "лето"),
    "winter": ("winter", "冬天", "شتاء", "зима"),
    "morning": ("morning", "早上", "صباح", "утро"),
    "week": ("week", "周", "أسبوع", "неделю"),
}

PUNCT = {
    "period": (".", "。", ".", "."),
    "question": ("?", "？", "؟", "?"),
    "comma": (",", "，", "،", ","),
}

ALL_ROWS = {**FUNCTION, **PLACES, **NOUNS, **ADJS, **PEOPLE, **TIMES}

# Per-language slot orders. Upper-case names are variables; lower-case are
# FUNCTION keys; "." "?" are punctuation keys.
TEMPLATES = [
    {
        "en": ["the", "ADJ", "NOUN", "is", "in", "PLACE", "."],
        "zh": ["ADJ", "of", "NOUN", "in", "PLACE", "."],
        "ar": ["NOUN", "ADJ", "located", "in", "PLACE", "."],
        "ru": ["ADJ", "NOUN", "located", "in", "PLACE", "."],
    },
    {
        "en": ["the", "answer", "is", "PLACE", "."],
        "zh": ["answer", "is", "PLACE", "."],
        "ar": ["answer", "is", "PLACE", "."],
        "ru": ["answer", "PLACE", "."],
    },
    {
        "en": ["PLACE", "has", "a", "ADJ", "NOUN", "."],
        "zh": ["PLACE", "has", "a", "ADJ", "of", "NOUN", "."],
        "ar": ["in", "PLACE", "NOUN", "ADJ", "."],
        "ru": ["in", "PLACE", "has", "ADJ", "NOUN", "."],
    },
    {
        "en": ["PEOPLE", "visit", "the", "NOUN", "in", "PLACE", "every", "TIME", "."],
        "zh": ["PEOPLE", "every", "TIME", "visit", "PLACE", "of", "NOUN", "."],
        "ar": ["PEOPLE", "visit", "NOUN", "in", "PLACE", "every", "TIME", "."],
        "ru": ["PEOPLE", "visit", "NOUN", "in", "PLACE", "every", "TIME", "."],
    },
    {
        "en": ["the", "NOUN", "of", "PLACE", "is", "very", "ADJ", "."],
        "zh": ["PLACE", "of", "NOUN", "very", "ADJ", "."],
        "ar": ["NOUN", "PLACE", "ADJ", "very", "."],
        "ru": ["NOUN", "PLACE", "very", "ADJ", "."],
    },
    {
        "en": ["many", "PEOPLE", "live", "in", "PLACE", "."],
        "zh": ["many", "PEOPLE", "live", "in", "PLACE", "."],
        "ar": ["live", "many", "of", "PEOPLE", "in", "PLACE", "."],
        "ru": ["many", "PEOPLE", "live", "in", "PLACE", "."],
    },
    {
        "en": ["the", "NOUN", "built", "in", "YEAR", "."],
        "zh": ["NOUN", "built", "YEAR", "year", "."],
        "ar": ["built", "NOUN", "in", "year", "YEAR", "."],
        "ru": ["NOUN", "built", "in", "YEAR", "year", "."],
    },
    {
        "en": ["where", "is", "the", "NOUN", "?"],
        "zh": ["NOUN", "in", "where", "?"],
        "ar": ["where", "NOUN", "?"],
        "ru": ["where", "NOUN", "?"],
    },
    {
        "en": ["PLACE", "and", "PLACE2", "are", "ADJ", "cities", "."],
        "zh": ["PLACE", "and", "PLACE2", "are", "ADJ", "of", "cities", "."],
        "ar": ["PLACE", "and", "PLACE2", "cities", "ADJ", "."],
        "ru": ["PLACE", "and", "PLACE2", "ADJ", "cities", "."],
    },
]

LANG_IDX = {l: i for i, l in enumerate(LANGS)}


def render(slots, lang, binding):
    i = LANG_IDX[lang]
    out = []
    for s in slots:
        if s == ".":
            out.append(PUNCT["period"][i])
        elif s == "?":
            out.append(PUNCT["question"][i])
        elif s == "YEAR":
            out.append(binding["YEAR"])
        elif s.isupper() or s == "PLACE2":
            out.append(binding[s][i])
        else:
            out.append(FUNCTION[s][i])
    return join(out, lang)


def join(words, lang):
    if lang == "zh":
        return "".join(words)
    text = ""
    for w in words:
        if text and w not in (".", "?", ",", "؟", "،"):
            text += " "
        text += w
    return text


def capitalize(text, lang):
    if lang in ("en", "ru") and text:
        return text[0].upper() + text[1:]
    return text


def bind(rng):
    places = rng.sample(sorted(PLACES), 2)
    return {
        "ADJ": ADJS[rng.choice(sorted(ADJS))],
        "NOUN": NOUNS[rng.choice(sorted(NOUNS))],
        "PLACE": PLACES[places[0]],
        "PLACE2": PLACES[places[1]],
        "PEOPLE": PEOPLE[rng.choice(sorted(PEOPLE))],
        "TIME": TIMES[rng.choice(sorted(TIMES))],
        "YEAR": str(rng.randrange(1100, 2020)),
    }


def sentence(tpl, binding):
    return {l: capitalize(render(tpl[l], l, binding), l) for l in LANGS}


def gen_corpora(rng, docs=150):
    out = {l: [] for l in LANGS}
    for _ in range(docs):
        n = rng.randint(3, 6)
        parts = {l: [] for l in LANGS}
        for _ in range(n):
            s = sentence(rng.choice(TEMPLATES), bind(rng))
            for l in LANGS:
                parts[l].append(s[l])
        for l in LANGS:
            sep = "" if l == "zh" else " "
            out[l].append(sep.join(parts[l]))
    for l in LANGS:
        (DATA / "corpus" / f"{l}.txt").write_text("\n".join(out[l]) + "\n", encoding="utf-8")


def qa_pair(adj, noun, place):
    b = {"ADJ": ADJS[adj], "NOUN": NOUNS[noun], "PLACE": PLACES[place]}
    q = sentence(TEMPLATES[7], b)
    a = sentence(TEMPLATES[0], b)
    return q, a


def gen_dataset(rng, n=20):
    triples = set()
    while len(triples) < n + 8:
        triples.add((rng.choice(sorted(ADJS)), rng.choice(sorted(NOUNS)), rng.choice(sorted(PLACES))))
    triples = sorted(triples)
    rng.shuffle(triples)
    samples, pool = triples[:n], triples[n:]
    lines = []
    for i, (adj, noun, place) in enumerate(samples):
        q, a = qa_pair(adj, noun, place)
        ctx = []
        for tpls in ([0, 4], [3, 6]):
            b = bind(rng)
            b["ADJ"], b["NOUN"], b["PLACE"] = ADJS[adj], NOUNS[noun], PLACES[place]
            parts = [sentence(TEMPLATES[t], b) for t in tpls]
            ctx.append({l: ("" if l == "zh" else " ").join(p[l] for p in parts) for l in LANGS})
        exemplars = {l: [] for l in LANGS}
        for j in range(4):
            eq, ea = qa_pair(*pool[(i + j) % len(pool)])
            for l in LANGS:
                exemplars[l].append({"q": eq[l], "a": ea[l]})
        rec = {
            "id": f"s{i:03d}",
            "query": q,
            "answer": a,
            "contexts": ctx,
            "exemplars": exemplars,
        }
        # A subset carries externally supplied drift annotations.
        if i % 3 == 0:
            rec["drift_type"] = "ABCD"[(i // 3) % 4]
        lines.append(json.dumps(rec, ensure_ascii=False))
    (DATA / "dataset" / "samples.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")


def gen_lexicon():
    rows = ["# en\tzh\tar\tru"]
    for row in ALL_ROWS.values():
        rows.append("\t".join(row))
    for row in PUNCT.values():
        rows.append("\t".join(row))
    (DATA / "lexicon.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")


def gen_templates():
    templates = {
        "en": {
            "instruction": "Answer the question using the context.",
            "language_directive": "Please answer in English.",
            "context_label": "Context",
            "question_label": "Question",
            "answer_label": "Answer",
        },
        "zh": {
            "instruction": "请根据上下文回答问题。",
            "language_directive": "请用中文回答。",
            "context_label": "上下文",
            "question_label": "问题",
            "answer_label": "答案",
        },
        "ar": {
            "instruction": "أجب عن السؤال باستخدام السياق.",
            "language_directive": "من فضلك أجب باللغة العربية.",
            "context_label": "السياق",
            "question_label": "السؤال",
            "answer_label": "الجواب",
        },
        "ru": {
            "instruction": "Ответьте на вопрос, используя контекст.",
            "language_directive": "Пожалуйста, отвечайте на русском языке.",
            "context_label": "Контекст",
            "question_label": "Вопрос",
            "answer_label": "Ответ",
        },
    }
    (DATA / "prompt_templates.json").write_text(
        json.dumps(templates, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )


def bytes_to_unicode():
    bs = list(range(ord("!"), ord("~") + 1)) + list(range(ord("¡"), ord("¬") + 1)) + list(range(ord("®"), ord("ÿ") + 1))
    cs = bs[:]
    n = 0
    for b in range(256):
        if b not in bs:
            bs.append(b)
            cs.append(256 + n)
            n += 1
    return dict(zip(bs, (chr(c) for c in cs)))


def gen_byte_map():
    table = bytes_to_unicode()
    lines = ["# byte\tcode point of the printable stand-in"]
    for b in range(256):
        lines.append(f"{b:02X}\t{ord(table[b]):04X}")
    (DATA / "byte_level_map.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def stratum(raw):
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        return "partial"
    scripts = set()
    for ch in text:
        if not ch.isalpha():
            continue
        name = unicodedata.name(ch, "")
        for s in ("LATIN", "CJK", "ARABIC", "CYRILLIC"):
            if name.startswith(s):
                scripts.add(s)
                break
        else:
            scripts.add("OTHER")
    if not scripts:
        return "neutral"
    if len(scripts) > 1:
        return "mixed"
    return scripts.pop()


def gen_byte_vocab(path):
    table = bytes_to_unicode()
    buckets = {}
    for line in Path(path).read_text().splitlines():
        tok, rank = line.split()
        raw = base64.b64decode(tok)
        if len(raw) == 1:
            continue
        buckets.setdefault(stratum(raw), []).append((int(rank), raw))
    quota = {"LATIN": 320, "CJK": 260, "ARABIC": 200, "CYRILLIC": 220, "OTHER": 120, "neutral": 90, "partial": 120, "mixed": 20}
    chosen = [bytes([b]) for b in range(256)]
    for name, q in quota.items():
        chosen.extend(raw for _, raw in sorted(buckets.get(name, []))[:q])
    specials = ["<|endoftext|>", "<|startoftranscript|>", "<|notimestamps|>", "<|zh|>"]
    tokens = []
    for i, raw in enumerate(chosen):
        tokens.append({"id": i, "surface": "".join(table[b] for b in raw)})
    for s in specials:
        tokens.append({"id": len(tokens), "surface": s})
    vocab = {"byte_level": True, "special_tokens": specials, "tokens": tokens}
    out = DATA / "fixtures" / "byte_vocab.json"
    out.write_text(json.dumps(vocab, ensure_ascii=False, indent=0) + "\n", encoding="utf-8")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--tiktoken")
    args = ap.parse_args()
    for d in ("corpus", "dataset", "fixtures"):
        (DATA / d).mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240611)
    gen_corpora(rng)
    gen_dataset(rng)
    gen_lexicon()
    gen_templates()
    gen_byte_map()
    if args.tiktoken:
        gen_byte_vocab(args.tiktoken)


if __name__ == "__main__":
    main()
