#!/usr/bin/env python3
"""Builds the shipped resource files under resources/ from third-party sources.

Inputs (paths given on the command line):
  --chaizi    hanzi_chaizi data.pkl (Apache-2.0)
  --decomp    cjk-decomp cjk_decomp.txt (from hanzipy, MIT)
  --ids       CHISE/cjkvi ids.txt (from cjkradlib)
  --opencc    OpenCC STCharacters.txt (Apache-2.0)
  --news      snownlp tag/199801.txt (MIT bundle)
  --font      GNU Unifont TTF converted from @fontsource/unifont (OFL-1.1)

English/Korean frequencies come from the installed wordfreq package.
The multilingual lexicon is read from tools/resources/lexicon/part*.txt.
"""

import argparse
import collections
import glob
import json
import os
import pickle
import random
import re
import sys

from PIL import Image, ImageDraw, ImageFont
from wordfreq import get_frequency_dict

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(os.path.dirname(HERE))
OUT = os.path.join(ROOT, "resources")

EN_WORDS = 60000
ZH_CHARS = 2500
KO_SYLLABLES = 4200
ZH_SENTENCES = 3000

GB_ALIASES = {0x00B7: (0xA1, 0xA4), 0x2014: (0xA1, 0xAA)}


def write_lines(path, header, lines):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for h in header:
            f.write("# " + h + "\n")
        for line in lines:
            f.write(line + "\n")


def is_hanzi(ch):
    return 0x4E00 <= ord(ch) <= 0x9FFF


def gb2312_bytes(ch):
    if ord(ch) in GB_ALIASES:
        return GB_ALIASES[ord(ch)]
    try:
        b = ch.encode("gb2312")
    except UnicodeEncodeError:
        return None
    return (b[0], b[1]) if len(b) == 2 else None


# ---------------------------------------------------------------- corpora

def build_en_corpus():
    freq = get_frequency_dict("en")
    words = [w for w, _ in sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))
             if re.fullmatch(r"[a-z]+", w) and (len(w) > 1 or w in ("a", "i"))]
    return words[:EN_WORDS]


def build_zh_corpus():
    freq = collections.Counter()
    for w, f in get_frequency_dict("zh").items():
        for ch in w:
            if is_hanzi(ch):
                freq[ch] += f
    chars = [c for c, _ in sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))
             if gb2312_bytes(c) and gb2312_bytes(c)[0] >= 0xB0]
    return chars[:ZH_CHARS]


def hangul_parts(ch):
    off = ord(ch) - 0xAC00
    return off // 588, (off % 588) // 28, off % 28


def build_ko_corpus():
    freq = collections.Counter()
    for w, f in get_frequency_dict("ko").items():
        for ch in w:
            if 0xAC00 <= ord(ch) <= 0xD7A3:
                freq[ch] += f
    ordered = [c for c, _ in sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))]
    # Jamo commonness drives the order of syllables without observed frequency.
    jf = [collections.Counter() for _ in range(3)]
    for c, f in freq.items():
        for i, p in enumerate(hangul_parts(c)):
            jf[i][p] += f

    def score(c):
        i, m, t = hangul_parts(c)
        return -(jf[0][i] * jf[1][m] * (jf[2][t] or 1e-12))

    seen = set(ordered)
    ks = [chr(cp) for cp in range(0xAC00, 0xD7A4) if chr(cp) not in seen and _euc_kr(chr(cp))]
    ks.sort(key=lambda c: (score(c), c))
    ordered += ks
    seen.update(ks)
    rest = [chr(cp) for cp in range(0xAC00, 0xD7A4) if chr(cp) not in seen]
    rest.sort(key=lambda c: (score(c), c))
    ordered += rest
    return ordered[:KO_SYLLABLES]


def _euc_kr(ch):
    try:
        ch.encode("euc-kr")
        return True
    except UnicodeEncodeError:
        return False


POLITICAL_CHARS = set("党政军委邓毛泽鹏镕锦涛共帝革阶斗枪炮战敌侵杀死毒")
POLITICAL_WORDS = ["主席", "书记", "中央", "主义", "领导", "干部", "人民", "国务院", "总理",
                   "部长", "同志", "台湾", "香港", "思想", "政治", "代表", "会议", "全国",
                   "讲话", "精神", "指示", "国家", "本报", "记者", "新华社", "塔利班",
                   "俘", "恐怖", "武装", "袭击"]


def build_zh_sentences(news_path, charset):
    out = []
    with open(news_path, encoding="utf-8") as f:
        for line in f:
            toks = line.split()
            if any(t.endswith("/nr") or t.endswith("/nt") for t in toks):
                continue
            s = "".join(t.rsplit("/", 1)[0] for t in toks)
            for cl in re.split(r"[，。！？；：、“”‘’（）《》—…\s]+", s):
                if not 8 <= len(cl) <= 20:
                    continue
                if not all(c in charset for c in cl):
                    continue
                if set(cl) & POLITICAL_CHARS or any(w in cl for w in POLITICAL_WORDS):
                    continue
                out.append(cl)
    out = list(dict.fromkeys(out))
    rng = random.Random(20250601)
    return rng.sample(out, ZH_SENTENCES)


# ---------------------------------------------------------------- components

def parse_decomp(path):
    table = {}
    rx = re.compile(r"^(.+?):([a-z0-9/]+)\((.*)\)$")
    with open(path, encoding="utf-8") as f:
        for line in f:
            m = rx.match(line.strip())
            if not m:
                continue
            ch, kind, body = m.groups()
            parts = [p for p in body.split(",") if p]
            rep = re.fullmatch(r"r(\d)\w*", kind)
            if rep and len(parts) == 1:
                parts = parts * int(rep.group(1))
            table[ch] = parts
    return table


def valid_component(c):
    if len(c) != 1:
        return False
    cp = ord(c)
    return (0x2E80 <= cp <= 0x2FDF or 0x3400 <= cp <= 0x4DBF
            or 0x4E00 <= cp <= 0x9FFF)


COMMON_RADICALS = "亻氵扌忄纟讠钅饣礻衤犭阝刂冫冖宀艹⺮辶廴彳攵疒穴罒厂广尸户耂丷亠勹匚卩彡灬爫牜冂龰"


def build_components(chaizi_path, decomp_path, chars):
    with open(chaizi_path, "rb") as f:
        chaizi = pickle.load(f)
    decomp = parse_decomp(decomp_path)
    entries = {}
    for ch in chars:
        options = []
        primary = decomp.get(ch)
        if primary and len(primary) >= 2 and all(valid_component(c) for c in primary):
            options.append(list(primary))
        for opt in chaizi.get(ch, []):
            if len(opt) >= 2 and all(valid_component(c) for c in opt):
                if sorted(opt) not in [sorted(o) for o in options]:
                    options.append(list(opt))
        options = [o for o in options if ch not in o][:4]
        if options:
            entries[ch] = options
    owners = collections.defaultdict(set)
    for ch, opts in entries.items():
        for o in opts:
            owners[tuple(sorted(o))].add(ch)
    known = set(chars) | set(COMMON_RADICALS)
    lines = []
    for ch in chars:
        for i, o in enumerate(entries.get(ch, [])):
            graphical = len(o) <= 3 and (i == 0 and ch in decomp or all(c in known for c in o))
            unique = len(owners[tuple(sorted(o))]) == 1
            lines.append(f"{ch}\t{','.join(o)}\t{1 if unique and graphical else 0}")
    return entries, lines


# ---------------------------------------------------------------- variants

EN_HOMOGLYPHS = {
    "a": "аɑ", "b": "Ьƅ", "c": "сϲ", "d": "ԁ", "e": "еҽ", "g": "ɡ", "h": "һ",
    "i": "іı", "j": "ј", "k": "κ", "l": "ӏ", "n": "ո", "o": "оο", "p": "рρ",
    "q": "ԛ", "r": "г", "s": "ѕ", "u": "υ", "v": "ν", "w": "ԝ", "x": "х", "y": "у",
    "z": "ᴢ",
    "A": "АΑ", "B": "ВΒ", "C": "СϹ", "E": "ЕΕ", "H": "НΗ", "I": "ІΙ", "J": "Ј",
    "K": "КΚ", "M": "МΜ", "N": "Ν", "O": "ОΟ", "P": "РΡ", "S": "Ѕ", "T": "ТΤ",
    "X": "ХΧ", "Y": "ҮΥ", "Z": "Ζ",
}

KO_DIGIT_VARIANTS = {
    "0": "Oㅇ〇", "1": "lㅣ|", "2": "Zᒿ", "3": "ЗƷ", "4": "Ꮞч", "5": "SƼ",
    "6": "бᑲ", "7": "ㄱ⌉", "8": "Bȣ", "9": "gq",
}

RADICAL_SIDES = "氵亻口犭扌木王女忄火礻石"


def build_martian(ids_path, opencc_path, chars, sentences):
    charset = set(chars)
    used = set("".join(sentences)) | charset
    variants = collections.defaultdict(list)
    with open(opencc_path, encoding="utf-8") as f:
        for line in f:
            if line.startswith("#") or "\t" not in line:
                continue
            s, ts = line.rstrip("\n").split("\t")
            if s in charset:
                for t in ts.split():
                    if t != s and is_hanzi(t) and t not in used:
                        variants[s].append(t)
    with open(ids_path, encoding="utf-8") as f:
        for line in f:
            cols = line.rstrip("\n").split("\t")
            if len(cols) < 3 or len(cols[1]) != 1:
                continue
            ch = cols[1]
            ids = re.sub(r"\[.*?\]", "", cols[2])
            if len(ids) == 3 and ids[0] == "⿰" and ids[1] in RADICAL_SIDES and ids[2] in charset:
                if is_hanzi(ch) and ch not in used:
                    variants[ids[2]].append(ch)
    owner = {}
    table = {}
    for src in chars:
        kept = []
        for v in variants.get(src, []):
            if v in owner or v in kept:
                continue
            if gb2312_bytes(v) is None and not _has_glyph(v):
                continue
            kept.append(v)
            if len(kept) == 3:
                break
        for v in kept:
            owner[v] = src
        if kept:
            table[src] = kept
    return table


_FONT = None
_FONT_CMAP = None


def _has_glyph(ch):
    return ord(ch) in _FONT_CMAP


# ---------------------------------------------------------------- fonts

def glyph_rows(ch):
    im = Image.new("L", (16, 16), 0)
    ImageDraw.Draw(im).text((0, 14), ch, fill=255, font=_FONT, anchor="ls")
    px = im.load()
    rows = []
    for y in range(16):
        v = 0
        for x in range(16):
            if px[x, y] > 127:
                v |= 1 << (15 - x)
        rows.append(v)
    return rows


def build_hzk16():
    data = bytearray(94 * 94 * 32)
    for qu in range(1, 95):
        for wei in range(1, 95):
            try:
                ch = bytes([0xA0 + qu, 0xA0 + wei]).decode("gb2312")
            except UnicodeDecodeError:
                continue
            if ord(ch) not in _FONT_CMAP:
                continue
            off = (94 * (qu - 1) + (wei - 1)) * 32
            for r, v in enumerate(glyph_rows(ch)):
                data[off + 2 * r] = v >> 8
                data[off + 2 * r + 1] = v & 0xFF
    return bytes(data)


def build_asc16():
    data = bytearray(256 * 16)
    for code in range(0x21, 0x7F):
        for r, v in enumerate(glyph_rows(chr(code))):
            data[code * 16 + r] = v >> 8
    return bytes(data)


def build_hangul_hex():
    lines = []
    for cp in range(0xAC00, 0xD7A4):
        if cp not in _FONT_CMAP:
            continue
        rows = glyph_rows(chr(cp))
        lines.append(f"{cp:04X}:" + "".join(f"{v:04X}" for v in rows))
    return lines


def build_gb2312_cpp(path):
    pairs = {}
    for qu in range(1, 95):
        for wei in range(1, 95):
            try:
                ch = bytes([0xA0 + qu, 0xA0 + wei]).decode("gb2312")
            except UnicodeDecodeError:
                continue
            pairs[ord(ch)] = ((0xA0 + qu) << 8) | (0xA0 + wei)
    for cp, (a, b) in GB_ALIASES.items():
        pairs[cp] = (a << 8) | b
    items = sorted(pairs.items())
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("// Generated by tools/resources/build_resources.py. Do not edit.\n")
        f.write('#include "tokbench/gb2312_table.h"\n\n')
        f.write("namespace tokbench::detail {\n\n")
        f.write(f"const Gb2312Entry kGb2312Table[] = {{\n")
        for i in range(0, len(items), 6):
            chunk = items[i:i + 6]
            f.write("    " + " ".join(f"{{0x{cp:04X}, 0x{code:04X}}}," for cp, code in chunk) + "\n")
        f.write("};\n\n")
        f.write(f"const std::size_t kGb2312TableSize = {len(items)};\n\n")
        f.write("}  // namespace tokbench::detail\n")


# ---------------------------------------------------------------- inventory

DOT_HANZI = (
    "一乙二十丁厂七卜人入八九几儿了力乃刀又三于干亏士工土才寸下大丈与万上小口巾山千乞川亿个勺久凡及夕丸么广亡门"
    "义之尸弓己已子卫也女飞刃习叉马乡丰王井开夫天无元专云扎艺木五支厅不太犬区历尤友匹车巨牙屯比互切瓦止少日中冈"
    "贝内水见午牛手毛气升长仁什片仆化仇币仍仅斤爪反介父从今凶分乏公仓月氏勿欠风丹匀乌凤勾文六方火为斗忆订计户认"
    "心尺引丑巴孔队办以允予劝双书幻玉刊示末未击打巧正扑扒功扔去甘世古节本术可丙左厉右石布龙平灭轧东卡北占业旧"
    "帅归且旦目叶甲申叮电号田由史只央兄叼叫另叨叹四生失禾丘付仗代仙们仪白仔他斥瓜乎丛令用甩印乐句匆册犯外处冬"
    "鸟务包饥主市立闪兰半汁汇头汉宁穴它讨写让礼训必议讯记永司尼民出辽奶奴加召皮边发孕圣对台矛纠母幼丝式刑动扛"
    "寺吉扣考托老执巩圾扩扫地扬场耳共芒亚芝朽朴机权过臣再协西压厌在有百存而")
DOT_HANGUL = (
    "근력빰빎볓눓놎닸눧횹딴놸꼈슁톺슫쏙릔닠욷헫멪액췅헒싄뵹튑탓뗸맊엶끝딤쪽뼈뀀럔왁쉰때헙딕씹넹넠윸렏뀼동팁콋숑꾼"
    "뙷됀쎔젝탢량갬판뻙줴륭뒸녻무섹씫읖푯짣걇땄더벡뢸궵틔쁠톱석효뷩웬놈즐낛쩩홍윽낼겇앾뗙깠뒌쭵땡졔쯕컵눞너겯룔"
    "뵵냥봥따궫콉벐넵늿칀쓕퉜홈갲튬꿰슝캐약꽏렜냠씻짬겱똴엠푿샹잔껄떙꽵죕휏휀뚜녘붎솣왈눽죌멈곺굗꾔병큐코꺵뚵뱰"
    "컻뤳텯늅낡찔원퀑곻휜솝솖핖긇떽림녓삷뱡팟쪨룩복냄활춧횜롄샾용욂돼궏뮊뿕댝꼱븨춥멤짊획뺌줠캼놂툇드빹싼컥쒐숄"
    "셍챌뉍농뮥램룡닔차쪠숼뚤퀫갋쮐뛤볕튝섪옛걥혽클뭣멂섿귕퍅솜뱝젆루렌뤄똡랕젼펨짤앧뤠쌩쑙빠탥썅뱔퓌빔첟쳬매댖"
    "캽툠옌꺋뗟쭤똑껌낕쪅홄턈땅즁선걍쵹쪁뮈씰뒜쟬릘쥠딋릅쳐몴외졂쌎왭뇯칰뜅퓀꿘힛분멭왣쒁췯쭊둳픰뙇첑뻴치먻랈믌"
    "엄큇뤅펑쬿려윌죘햣튄껐켕숱비싦떈켔뮉댧손삤노같뙴고쵭밟즘숴섄뢱")


def build_inventory():
    rows = [
        ("symbol", "~!@#$%^&*()-_=+[{}]\\|;:'\",<.>/?"),
        ("symbol", "·！￥…（）—、【】；：‘“，。？"),
        ("greek", "αβγδεζνξπρστηθικλμυοφχψω"),
        ("latin", "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"),
        ("digit", "1234567890"),
        ("kana", "あいうえおかきくけこさしすせそたちつてとなにぬねのはひふへほまみむめもやゆよらりるれろわをん"),
        ("kana", "アイウエオカキクケコサシスセソタチツテトナニヌネノハヒフヘホマミムメモヤユヨラリルレロワヲン"),
        ("kana", "がぎぐげござじずぜぞだぢづでどばびぶべぼぱぴぷぺぽガギグゲゴザジズゼゾダヂヅデドバビブベボパピプペポ"),
        ("hanzi", DOT_HANZI),
        ("hangul", DOT_HANGUL),
    ]
    chars = "".join(r[1] for r in rows)
    assert len(chars) == 976 and len(set(chars)) == 976, (len(chars), len(set(chars)))
    return [f"{cat}\t{s}" for cat, s in rows]


# ---------------------------------------------------------------- lexicon / riddles

def load_lexicon():
    rows = []
    for path in sorted(glob.glob(os.path.join(HERE, "lexicon", "part*.txt"))):
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                en, zh, ko, domain = line.split("|")
                rows.append((en, zh, ko, domain))
    return rows


def build_en_riddles(words, n):
    by_key = collections.defaultdict(list)
    for w in words[:20000]:
        if 5 <= len(w) <= 9:
            by_key["".join(sorted(w))].append(w)
    rng = random.Random(11)
    cands = [ws[0] for ws in by_key.values() if len(ws) == 1]
    cands.sort()
    rng.shuffle(cands)
    out = []
    for w in cands:
        letters = list(w)
        while "".join(letters) == w:
            rng.shuffle(letters)
        q = f"Unscramble the letters \"{''.join(letters)}\" to form a single English word ({len(w)})."
        out.append({"question": q, "answer": w, "language": "en"})
        if len(out) == n:
            break
    return out


def build_zh_riddles(entries, owners_ok, n):
    rng = random.Random(12)
    cands = sorted(owners_ok)
    rng.shuffle(cands)
    out = []
    for ch, parts in cands:
        pieces = "、".join(f"“{p}”" for p in parts)
        q = f"把{pieces}这几个部件拼在一起（猜一字）"
        out.append({"question": q, "answer": ch, "language": "zh"})
        if len(out) == n:
            break
    return out


# ---------------------------------------------------------------- main

def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--chaizi", required=True)
    ap.add_argument("--decomp", required=True)
    ap.add_argument("--ids", required=True)
    ap.add_argument("--opencc", required=True)
    ap.add_argument("--news", required=True)
    ap.add_argument("--font", required=True)
    args = ap.parse_args()

    global _FONT, _FONT_CMAP
    from fontTools.ttLib import TTFont
    _FONT = ImageFont.truetype(args.font, 16)
    _FONT_CMAP = TTFont(args.font).getBestCmap()

    en = build_en_corpus()
    zh = build_zh_corpus()
    ko = build_ko_corpus()
    write_lines(f"{OUT}/corpus/en_words.txt",
                ["English alphabetic words, frequency order (wordfreq)"], en)
    write_lines(f"{OUT}/corpus/zh_chars.txt",
                ["Chinese characters, frequency order, GB2312 level 1/2 (wordfreq)"], zh)
    write_lines(f"{OUT}/corpus/ko_syllables.txt",
                ["Hangul syllables: observed frequency, then KS X 1001, then jamo commonness"], ko)

    sentences = build_zh_sentences(args.news, set(zh))
    write_lines(f"{OUT}/corpus/zh_sentences.txt",
                ["Chinese clauses sampled from a 1998 newswire corpus (snownlp bundle)"], sentences)

    comp_chars = list(dict.fromkeys(zh + list(DOT_HANZI)))
    entries, comp_lines = build_components(args.chaizi, args.decomp, comp_chars)
    write_lines(f"{OUT}/components/zh_components.tsv",
                ["char<TAB>components<TAB>recombinable; first line per char is the primary decomposition",
                 "sources: cjk-decomp (primary), hanzi_chaizi (alternates)"], comp_lines)

    write_lines(f"{OUT}/variants/en_homoglyphs.tsv", ["Latin letter -> lookalike letters"],
                [f"{k}\t{','.join(v)}" for k, v in EN_HOMOGLYPHS.items()])
    write_lines(f"{OUT}/variants/ko_digits.tsv", ["digit -> lookalike symbols"],
                [f"{k}\t{','.join(v)}" for k, v in KO_DIGIT_VARIANTS.items()])
    martian = build_martian(args.ids, args.opencc, zh, sentences)
    write_lines(f"{OUT}/variants/zh_martian.tsv",
                ["character -> traditional or radical-added lookalikes (OpenCC, CHISE IDS)"],
                [f"{k}\t{','.join(v)}" for k, v in martian.items()])

    write_lines(f"{OUT}/dot_inventory.tsv", ["category<TAB>characters"], build_inventory())

    lex = load_lexicon()
    write_lines(f"{OUT}/topics.tsv", ["en<TAB>zh<TAB>ko<TAB>domain"],
                ["\t".join(r) for r in lex])
    write_lines(f"{OUT}/riddles/ko_riddles.csv", [],
                ["word,gloss,theme"] + [f"{ko_},{en_},{dom}" for en_, _, ko_, dom in lex])

    combos = set()
    for line in comp_lines:
        ch, parts, rec = line.split("\t")
        if rec == "1":
            combos.add((ch, tuple(parts.split(","))))
    os.makedirs(f"{OUT}/riddles", exist_ok=True)
    for lang, items in (("en", build_en_riddles(en, 1200)),
                        ("zh", build_zh_riddles(entries, combos, 1200))):
        with open(f"{OUT}/riddles/{lang}_riddles.jsonl", "w", encoding="utf-8", newline="\n") as f:
            for it in items:
                f.write(json.dumps(it, ensure_ascii=False) + "\n")
        print(f"{lang} riddles: {len(items)}")

    os.makedirs(f"{OUT}/fonts", exist_ok=True)
    with open(f"{OUT}/fonts/HZK16", "wb") as f:
        f.write(build_hzk16())
    with open(f"{OUT}/fonts/ASC16", "wb") as f:
        f.write(build_asc16())
    write_lines(f"{OUT}/fonts/hangul16.hex", [], build_hangul_hex())
    build_gb2312_cpp(os.path.join(ROOT, "src", "bitmap", "gb2312_table.cpp"))

    print(f"en {len(en)} zh {len(zh)} ko {len(ko)} sentences {len(sentences)} "
          f"component chars {len(entries)} martian {len(martian)}")


if __name__ == "__main__":
    sys.exit(main())
