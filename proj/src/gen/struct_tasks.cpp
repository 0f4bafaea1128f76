#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "common.h"
#include "prompts.h"
#include "tokbench/utf8.h"

namespace tokbench {

using gen::make_id;
using gen::make_instance;

namespace {

// Counts 0..max_count, equally often, shuffled.
std::vector<int> count_pool(const GenSpec& spec, int max_count, Rng& rng) {
  std::vector<int> pool(spec.count);
  for (int i = 0; i < spec.count; ++i) pool[i] = i % (max_count + 1);
  rng.shuffle(pool);
  return pool;
}

struct Carrier {
  std::string unit;
  int occurrences;
};

// Picks distinct carriers whose occurrences sum to `count` using at most `max_units`.
std::optional<std::vector<std::string>> pick_carriers(const std::vector<Carrier>& carriers, int count,
                                                       std::size_t max_units, Rng& rng) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<std::string> picked;
    std::set<std::string> used;
    int remaining = count;
    while (remaining > 0 && picked.size() < max_units) {
      std::vector<const Carrier*> fit;
      for (const auto& c : carriers) {
        if (c.occurrences <= remaining && !used.count(c.unit)) fit.push_back(&c);
      }
      if (fit.empty()) break;
      const Carrier* c = fit[rng.below(fit.size())];
      picked.push_back(c->unit);
      used.insert(c->unit);
      remaining -= c->occurrences;
    }
    if (remaining == 0) return picked;
  }
  return std::nullopt;
}

void pad_with(std::vector<std::string>& seq, const std::vector<std::string>& fillers, std::size_t size, Rng& rng) {
  std::set<std::string> used(seq.begin(), seq.end());
  if (fillers.size() < size) throw GenerationError("not enough filler units");
  while (seq.size() < size) {
    const auto& f = rng.pick(fillers);
    if (used.insert(f).second) seq.push_back(f);
  }
}

int jamo_occurrences(char32_t syllable, char32_t jamo) {
  const auto t = decompose_hangul(syllable);
  return (t.initial == jamo) + (t.medial == jamo) + (t.final == jamo);
}

}  // namespace

// ---- COMPC -----------------------------------------------------------------

namespace {

TaskInstance compc_instance(const GenSpec& spec, std::size_t idx, const std::string& target,
                            std::vector<std::string> units, int count, Rng& rng) {
  rng.shuffle(units);
  auto inst = make_instance(Task::COMPC, spec, idx, EvalType::number);
  inst.question = prompts::component_count(spec.language, target, join_units(spec.language, units));
  inst.label = std::to_string(count);
  inst.metadata["target"] = target;
  inst.metadata["target_count"] = count;
  inst.metadata["units"] = units;
  return inst;
}

std::vector<TaskInstance> compc_en(const GenSpec& spec, const Corpus& corpus, Rng& rng) {
  const std::size_t head = std::min<std::size_t>(corpus.items.size(), 20000);
  // letter -> occurrences -> words
  std::map<char, std::map<int, std::vector<std::string>>> index;
  for (std::size_t i = 0; i < head; ++i) {
    const auto& w = corpus.items[i];
    // Skip fillers such as "xx" that are runs of one letter.
    if (w.size() < 3 || w.find_first_not_of(w[0]) == std::string::npos) continue;
    for (char l = 'a'; l <= 'z'; ++l) {
      int n = 0;
      for (char c : w) n += (c == l || c == l - 32) ? 1 : 0;
      index[l][n].push_back(w);
    }
  }
  std::vector<TaskInstance> out;
  for (int count : count_pool(spec, 9, rng)) {
    std::optional<TaskInstance> inst;
    for (int attempt = 0; attempt < 2000 && !inst; ++attempt) {
      const char letter = static_cast<char>('a' + rng.below(26));
      const int k = rng.range(1, 3);
      const auto& by_count = index[letter];
      std::vector<std::string> words;
      std::set<std::string> used;
      int remaining = count;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        int part = remaining;
        if (j + 1 < k) {
          std::vector<int> feasible;
          for (const auto& [c, list] : by_count) {
            if (c <= remaining) feasible.push_back(c);
          }
          part = rng.pick(feasible);
        }
        auto it = by_count.find(part);
        if (it == by_count.end()) {
          ok = false;
          break;
        }
        const auto& w = rng.pick(it->second);
        ok = used.insert(w).second;
        words.push_back(w);
        remaining -= part;
      }
      if (ok) inst = compc_instance(spec, out.size(), std::string(1, letter), words, count, rng);
    }
    if (!inst) throw GenerationError(fmt::format("COMPC: no word set reaches letter count {}", count));
    out.push_back(std::move(*inst));
  }
  return out;
}

std::vector<TaskInstance> compc_ko(const GenSpec& spec, const Corpus& corpus, Rng& rng) {
  constexpr std::size_t kSequence = 6;
  std::map<char32_t, std::vector<Carrier>> carriers;
  std::vector<char32_t> syllables;
  for (const auto& s : corpus.items) {
    const char32_t cp = utf8::single(s);
    syllables.push_back(cp);
    const auto t = decompose_hangul(cp);
    for (char32_t j : {t.initial, t.medial, t.final}) {
      if (j == 0) continue;
      auto& list = carriers[j];
      if (list.empty() || list.back().unit != s) list.push_back({s, jamo_occurrences(cp, j)});
    }
  }
  std::vector<char32_t> targets;
  for (const auto& [j, list] : carriers) {
    if (list.size() >= 5) targets.push_back(j);
  }
  std::vector<TaskInstance> out;
  for (int count : count_pool(spec, 5, rng)) {
    std::optional<TaskInstance> inst;
    for (int attempt = 0; attempt < 200 && !inst; ++attempt) {
      const char32_t target = rng.pick(targets);
      auto picked = pick_carriers(carriers[target], count, kSequence, rng);
      if (!picked) continue;
      std::vector<std::string> fillers;
      for (char32_t cp : syllables) {
        if (jamo_occurrences(cp, target) == 0) fillers.push_back(utf8::encode(cp));
      }
      pad_with(*picked, fillers, kSequence, rng);
      inst = compc_instance(spec, out.size(), utf8::encode(target), *picked, count, rng);
    }
    if (!inst) throw GenerationError(fmt::format("COMPC: no syllable set reaches jamo count {}", count));
    out.push_back(std::move(*inst));
  }
  return out;
}

int multiplicity(const std::vector<std::string>& parts, const std::string& target) {
  return static_cast<int>(std::count(parts.begin(), parts.end(), target));
}

// True when `target` appears in any decomposition of `ch` or of its parts.
bool contains_component(const ComponentTable& table, const std::string& ch, const std::string& target) {
  const auto* list = table.find(ch);
  if (list == nullptr) return false;
  for (const auto& d : *list) {
    for (const auto& p : d.parts) {
      if (p == target) return true;
      if (const auto* inner = table.find(p)) {
        for (const auto& di : *inner) {
          if (multiplicity(di.parts, target) > 0) return true;
        }
      }
    }
  }
  return false;
}

std::vector<TaskInstance> compc_zh(const GenSpec& spec, const Corpus& corpus, const ComponentTable& table, Rng& rng) {
  constexpr std::size_t kSequence = 5;
  std::vector<std::string> chars;
  for (const auto& c : corpus.items) {
    if (table.contains(c)) chars.push_back(c);
  }
  // Carriers count the target the same way in every decomposition and never one level deeper.
  std::map<std::string, std::vector<Carrier>> carriers;
  for (const auto& c : chars) {
    const auto& list = *table.find(c);
    std::set<std::string> comps(list.front().parts.begin(), list.front().parts.end());
    for (const auto& target : comps) {
      const int m = multiplicity(list.front().parts, target);
      bool consistent = true;
      for (const auto& d : list) consistent = consistent && multiplicity(d.parts, target) == m;
      for (const auto& p : list.front().parts) {
        if (p == target) continue;
        if (const auto* inner = table.find(p)) {
          for (const auto& di : *inner) consistent = consistent && multiplicity(di.parts, target) == 0;
        }
      }
      if (consistent) carriers[target].push_back({c, m});
    }
  }
  std::vector<std::string> targets;
  for (const auto& [t, list] : carriers) {
    if (list.size() >= 5) targets.push_back(t);
  }
  if (targets.empty()) throw GenerationError("COMPC: component table yields no usable targets");
  std::vector<TaskInstance> out;
  for (int count : count_pool(spec, 4, rng)) {
    std::optional<TaskInstance> inst;
    for (int attempt = 0; attempt < 200 && !inst; ++attempt) {
      const std::string& target = rng.pick(targets);
      auto picked = pick_carriers(carriers[target], count, kSequence, rng);
      if (!picked) continue;
      std::vector<std::string> fillers;
      for (const auto& c : chars) {
        if (!contains_component(table, c, target)) fillers.push_back(c);
      }
      pad_with(*picked, fillers, kSequence, rng);
      inst = compc_instance(spec, out.size(), target, *picked, count, rng);
    }
    if (!inst) throw GenerationError(fmt::format("COMPC: no character set reaches component count {}", count));
    out.push_back(std::move(*inst));
  }
  return out;
}

}  // namespace

std::vector<TaskInstance> gen_compc(const GenSpec& spec, const Corpus& corpus, const ComponentTable& table) {
  Rng rng(spec.seed);
  switch (spec.language) {
    case Language::zh: return compc_zh(spec, corpus, table, rng);
    case Language::ko: return compc_ko(spec, corpus, rng);
    default: return compc_en(spec, corpus, rng);
  }
}

// ---- COMPM -----------------------------------------------------------------

namespace {

struct CompmItem {
  std::string token;
  std::vector<std::string> parts;                 // combine input, source order
  std::vector<std::vector<std::string>> options;  // split label
  std::vector<std::string> hints;                 // English split prompt spans
};

std::vector<std::string> span_hints(const std::vector<std::string>& parts) {
  std::vector<std::string> hints;
  for (const auto& p : parts) hints.push_back(fmt::format("from {} to {}", p.front(), p.back()));
  return hints;
}

std::vector<CompmItem> compm_en(const Corpus& corpus, std::size_t need, Rng& rng) {
  const std::size_t head = std::min<std::size_t>(corpus.items.size(), 30000);
  const std::unordered_set<std::string> vocab(corpus.items.begin(), corpus.items.end());
  std::vector<std::string> eligible;
  for (std::size_t i = 0; i < head; ++i) {
    const auto& w = corpus.items[i];
    if (w.size() < 6 || w.size() > 12) continue;
    if (std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; })) eligible.push_back(w);
  }
  rng.shuffle(eligible);
  std::vector<CompmItem> items;
  const ComponentTable none;
  for (const auto& w : eligible) {
    if (items.size() == need) break;
    const auto splits = decompose_component(Language::en, w, none);
    auto parts = splits[rng.below(splits.size())];
    auto perm = parts;
    std::sort(perm.begin(), perm.end());
    bool unique = true;
    do {
      std::string joined;
      for (const auto& p : perm) joined += p;
      if (joined != w && vocab.count(joined)) unique = false;
    } while (unique && std::next_permutation(perm.begin(), perm.end()));
    if (!unique) continue;
    CompmItem item{w, parts, {}, span_hints(parts)};
    for (const auto& s : splits) {
      if (span_hints(s) == item.hints) item.options.push_back(s);
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<CompmItem> compm_ko(const Corpus& corpus, std::size_t need, Rng& rng) {
  const std::unordered_set<std::string> vocab(corpus.items.begin(), corpus.items.end());
  auto order = corpus.items;
  rng.shuffle(order);
  std::vector<CompmItem> items;
  for (const auto& s : order) {
    if (items.size() == need) break;
    const auto parts = jamo_parts(utf8::single(s));
    std::vector<char32_t> jamo;
    for (const auto& p : parts) jamo.push_back(utf8::single(p));
    std::sort(jamo.begin(), jamo.end());
    bool unique = true;
    do {
      JamoTriple t{jamo[0], jamo[1], jamo.size() == 3 ? jamo[2] : 0};
      try {
        const std::string other = utf8::encode(compose_hangul(t));
        if (other != s && vocab.count(other)) unique = false;
      } catch (const DomainError&) {
      }
    } while (unique && std::next_permutation(jamo.begin(), jamo.end()));
    if (unique) items.push_back({s, parts, {parts}, {}});
  }
  return items;
}

std::vector<CompmItem> compm_zh(const Corpus& corpus, const ComponentTable& table, std::size_t need, Rng& rng) {
  std::map<std::vector<std::string>, std::set<std::string>> by_parts;
  for (const auto& c : table.characters()) {
    for (const auto& d : *table.find(c)) {
      auto key = d.parts;
      std::sort(key.begin(), key.end());
      by_parts[key].insert(c);
    }
  }
  std::vector<CompmItem> eligible;
  for (const auto& c : corpus.items) {
    const auto* list = table.find(c);
    if (list == nullptr) continue;
    for (const auto& d : *list) {
      auto key = d.parts;
      std::sort(key.begin(), key.end());
      if (!d.recombinable || by_parts[key].size() != 1) continue;
      CompmItem item{c, d.parts, {}, {}};
      for (const auto& o : *list) item.options.push_back(o.parts);
      eligible.push_back(std::move(item));
      break;
    }
  }
  if (eligible.size() < need) return eligible;
  std::vector<CompmItem> items;
  for (auto i : rng.sample_indices(eligible.size(), need)) items.push_back(eligible[i]);
  return items;
}

}  // namespace

std::vector<TaskInstance> gen_compm(const GenSpec& spec, const Corpus& corpus, const ComponentTable& table) {
  Rng rng(spec.seed);
  const Language lang = spec.language;
  const auto need = static_cast<std::size_t>(spec.count);
  std::vector<CompmItem> items;
  switch (lang) {
    case Language::zh: items = compm_zh(corpus, table, need, rng); break;
    case Language::ko: items = compm_ko(corpus, need, rng); break;
    default: items = compm_en(corpus, need, rng); break;
  }
  if (items.size() < need) {
    throw GenerationError(fmt::format("COMPM: only {} unambiguous {} tokens, {} needed", items.size(),
                                      to_string(lang), need));
  }
  std::vector<TaskInstance> splits, combines;
  for (std::size_t i = 0; i < need; ++i) {
    const auto& item = items[i];
    auto split = make_instance(Task::COMPM, spec, i, EvalType::split);
    split.question = prompts::split(lang, item.token, item.hints);
    split.label = item.options;
    split.metadata["subtask"] = "split";
    split.metadata["token"] = item.token;
    split.metadata["pair"] = make_id(Task::COMPM, lang, need + i);

    auto shuffled = item.parts;
    for (int k = 0; k < 5 && shuffled == item.parts; ++k) rng.shuffle(shuffled);
    auto combine = make_instance(Task::COMPM, spec, need + i, EvalType::match_answer);
    combine.question = prompts::combine(lang, shuffled);
    combine.label = item.token;
    combine.metadata["subtask"] = "combine";
    combine.metadata["parts"] = shuffled;
    combine.metadata["pair"] = split.id;
    splits.push_back(std::move(split));
    combines.push_back(std::move(combine));
  }
  for (auto& c : combines) splits.push_back(std::move(c));
  return splits;
}

// ---- DOT -------------------------------------------------------------------

std::vector<TaskInstance> gen_dot(const GenSpec& spec, const FontStore& store,
                                  const std::vector<InventoryEntry>& inventory) {
  struct Rendered {
    const InventoryEntry* entry;
    Bitmap16 bitmap;
  };
  std::vector<Rendered> usable;
  for (const auto& e : inventory) {
    try {
      usable.push_back({&e, store.render(utf8::single(e.character))});
    } catch (const RenderError& err) {
      spdlog::warn("DOT: skipping {}: {}", e.character, err.what());
    }
  }
  const int lang_index = static_cast<int>(spec.language);
  std::vector<TaskInstance> out;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    const auto& [entry, bitmap] = usable[i];
    const int variant = static_cast<int>((i + lang_index) % 3) + 1;
    auto inst = make_instance(Task::DOT, spec, i, EvalType::match_answer);
    const std::string category(to_string(entry->category));
    switch (variant) {
      case 1:
        inst.question = prompts::dot_char_to_category(spec.language, entry->character);
        inst.label = category;
        inst.metadata["variant"] = "char_to_category";
        break;
      case 2:
        inst.question = prompts::dot_bitmap_to_category(spec.language, bitmap);
        inst.label = category;
        inst.metadata["variant"] = "bitmap_to_category";
        break;
      default:
        inst.question = prompts::dot_bitmap_to_char(spec.language, bitmap, entry->category);
        inst.label = entry->character;
        inst.metadata["variant"] = "bitmap_to_char";
        break;
    }
    inst.metadata["character"] = entry->character;
    inst.metadata["category"] = category;
    if (variant != 1) inst.metadata["bitmap_encoding"] = std::string(kBitmapEncoding);
    out.push_back(std::move(inst));
  }
  return out;
}

// ---- RIDL ------------------------------------------------------------------

std::vector<TaskInstance> gen_ridl_ko(const GenSpec& spec, const std::vector<RiddleEntry>& entries,
                                      const std::map<int, int>& distribution) {
  Rng rng(spec.seed);
  std::map<int, std::vector<const RiddleEntry*>> by_length;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> answers;  // (theme, initials)
  for (const auto& e : entries) {
    const auto cps = utf8::decode(e.word);
    if (cps.empty() || !std::all_of(cps.begin(), cps.end(), is_hangul_syllable)) {
      spdlog::warn("RIDL: skipping non-Hangul entry \"{}\"", e.word);
      continue;
    }
    by_length[static_cast<int>(cps.size())].push_back(&e);
    auto& list = answers[{e.theme, hangul_initials(e.word)}];
    if (std::find(list.begin(), list.end(), e.word) == list.end()) list.push_back(e.word);
  }
  std::vector<const RiddleEntry*> chosen;
  for (const auto& [len, n] : distribution) {
    const auto& pool = by_length[len];
    if (pool.size() < static_cast<std::size_t>(n)) {
      throw GenerationError(fmt::format("RIDL: {} words of {} syllables requested, {} available", n, len, pool.size()));
    }
    for (auto i : rng.sample_indices(pool.size(), n)) chosen.push_back(pool[i]);
  }
  rng.shuffle(chosen);
  std::vector<TaskInstance> out;
  for (const auto* e : chosen) {
    const std::string initials = hangul_initials(e->word);
    auto inst = make_instance(Task::RIDL, spec, out.size(), EvalType::match_answer);
    inst.question = prompts::riddle_ko(e->theme, initials);
    auto label = answers[{e->theme, initials}];
    std::stable_partition(label.begin(), label.end(), [&](const std::string& w) { return w == e->word; });
    inst.label = label;
    inst.metadata["word"] = e->word;
    inst.metadata["gloss"] = e->gloss;
    inst.metadata["theme"] = e->theme;
    inst.metadata["initials"] = initials;
    inst.metadata["syllables"] = utf8::decode(e->word).size();
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<TaskInstance> gen_ridl_external(const GenSpec& spec, const std::vector<ExternalRiddle>& riddles) {
  Rng rng(spec.seed);
  if (riddles.size() < static_cast<std::size_t>(spec.count)) {
    throw GenerationError(fmt::format("RIDL: {} external riddles for {}, {} needed", riddles.size(),
                                      to_string(spec.language), spec.count));
  }
  std::vector<TaskInstance> out;
  for (auto i : rng.sample_indices(riddles.size(), spec.count)) {
    auto inst = make_instance(Task::RIDL, spec, out.size(), EvalType::match_answer);
    inst.question = riddles[i].question;
    inst.label = riddles[i].answer;
    inst.metadata["source_index"] = i;
    out.push_back(std::move(inst));
  }
  return out;
}

// ---- VAR -------------------------------------------------------------------

namespace {

struct Distortion {
  std::string text;
  std::vector<std::size_t> positions;
};

Distortion distort(std::string_view original, const HomoglyphTable& table, Rng& rng) {
  const auto chars = utf8::split(original);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (table.variants(chars[i])) candidates.push_back(i);
  }
  if (candidates.empty()) throw GenerationError("VAR: no substitutable character");
  std::vector<std::string> out = chars;
  std::vector<std::size_t> positions;
  while (positions.empty()) {
    for (auto i : candidates) {
      if (rng.chance(0.5)) positions.push_back(i);
    }
  }
  for (auto i : positions) out[i] = rng.pick(*table.variants(chars[i]));
  std::string text;
  for (const auto& c : out) text += c;
  return {text, positions};
}

bool has_variant(std::string_view s, const HomoglyphTable& table) {
  for (const auto& c : utf8::split(s)) {
    if (table.variants(c)) return true;
  }
  return false;
}

}  // namespace

std::vector<TaskInstance> gen_var(const GenSpec& spec, const VariantMap& maps, const std::vector<std::string>& sources) {
  Rng rng(spec.seed);
  const Language lang = spec.language;
  std::vector<std::string> originals;
  if (lang == Language::ko) {
    for (int i = 0; i < spec.count; ++i) {
      std::string digits;
      const int len = rng.range(4, 13);
      for (int k = 0; k < len; ++k) digits += static_cast<char>('0' + rng.below(10));
      originals.push_back(digits);
    }
  } else {
    const HomoglyphTable& table = lang == Language::en ? maps.en : maps.zh;
    std::vector<std::string> eligible;
    const std::size_t head = lang == Language::en ? std::min<std::size_t>(sources.size(), 20000) : sources.size();
    for (std::size_t i = 0; i < head; ++i) {
      const auto& s = sources[i];
      if (lang == Language::en && (s.size() < 4 || s.size() > 12)) continue;
      if (has_variant(s, table)) eligible.push_back(s);
    }
    if (eligible.size() < static_cast<std::size_t>(spec.count)) {
      throw GenerationError(fmt::format("VAR: {} substitutable {} sources, {} needed", eligible.size(),
                                        to_string(lang), spec.count));
    }
    for (auto i : rng.sample_indices(eligible.size(), spec.count)) originals.push_back(eligible[i]);
  }
  const HomoglyphTable& table = lang == Language::en ? maps.en : lang == Language::zh ? maps.zh : maps.ko_digits;
  std::vector<TaskInstance> out;
  for (const auto& original : originals) {
    const auto d = distort(original, table, rng);
    auto inst = make_instance(Task::VAR, spec, out.size(), EvalType::match_answer);
    inst.question = prompts::variant(lang, d.text);
    inst.label = original;
    inst.metadata["distorted"] = d.text;
    inst.metadata["positions"] = d.positions;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace tokbench
