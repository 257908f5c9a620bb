#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace polytask;
using polytask::testing::forced;
using polytask::testing::make;
using polytask::testing::shared_suite;
using nlohmann::json;

namespace {

const std::vector<std::string> kEnMarkers = {"Final answer:", "Answer:"};

std::shared_ptr<const LanguagePack> pack(const std::string& task, Language lang) {
  auto& s = shared_suite();
  return s.packs().load(task, lang, s.registry().get(task).contract(), false);
}

Verdict verify(const ProblemInstance& inst, std::string_view transcript) {
  return shared_suite().verifier().verify(inst, transcript);
}

std::string random_utf8(Rng& rng, std::size_t max_len) {
  static const std::vector<std::string> pieces = {
      "a", "Z", "7", " ", "\n", ":", "<answer>", "</answer>", "Final answer:", "答案：", "最終回答：", "[", "]", ",",
      "\"", "١", "٣", "৭", "๙", "−", "True", "Vero", "Valid", "é", "\xF0\x9F\x98\x80", "\xC3", "\xFF", "\xE2\x82",
      std::string(1, '\0'), "1,000", "3.5", "-", "0 1\n1 0"};
  std::string out;
  const auto n = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < n; ++i) out += pieces[rng.below(pieces.size())];
  return out;
}

}  // namespace

// ---- extraction

TEST(Extract, TagWinsOverMarkerAndLastLine) {
  const auto e = extract_answer("Answer: 3\n<answer> 14 </answer>\n99", kEnMarkers);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->text, "14");
  EXPECT_EQ(e->strategy, ExtractionStrategy::tagged);
}

TEST(Extract, LastTagPairIsUsed) {
  const auto e = extract_answer("<answer>1</answer> then <answer>2</answer>", kEnMarkers);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->text, "2");
}

TEST(Extract, LastMarkerOccurrence) {
  const auto e = extract_answer("Answer: 3. Hmm, wait.\nfinal ANSWER: 4", kEnMarkers);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->text, "4");
  EXPECT_EQ(e->strategy, ExtractionStrategy::marker);
}

TEST(Extract, FullWidthColonVariant) {
  const auto e = extract_answer("考えます。\n最終回答：42", {"最終回答:"});
  ASSERT_TRUE(e);
  EXPECT_EQ(e->text, "42");
  EXPECT_EQ(e->strategy, ExtractionStrategy::marker);
}

TEST(Extract, LastNonEmptyLine) {
  const auto e = extract_answer("thinking\n\n  12  \n\n", kEnMarkers);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->text, "12");
  EXPECT_EQ(e->strategy, ExtractionStrategy::last_line);
}

TEST(Extract, SpanPointsIntoTranscript) {
  const std::string t = "x\nAnswer:  abc  ";
  const auto e = extract_answer(t, kEnMarkers);
  ASSERT_TRUE(e);
  EXPECT_EQ(t.substr(e->begin, e->end - e->begin), e->text);
}

TEST(Extract, NothingFound) {
  EXPECT_FALSE(extract_answer("", kEnMarkers));
  EXPECT_FALSE(extract_answer(" \n\t\n ", kEnMarkers));
}

// ---- normalization

TEST(Normalize, IntegerWithPunctuation) {
  const auto n = normalize(AnswerKind::integer, " 14.", *pack("gcd", Language::en));
  ASSERT_TRUE(n.value);
  EXPECT_EQ(std::get<std::int64_t>(*n.value), 14);
}

TEST(Normalize, IntegerMarkupAndSigns) {
  const auto en = pack("gcd", Language::en);
  EXPECT_EQ(std::get<std::int64_t>(*normalize(AnswerKind::integer, "**-7**", *en).value), -7);
  EXPECT_EQ(std::get<std::int64_t>(*normalize(AnswerKind::integer, "$1,000$", *en).value), 1000);
  EXPECT_EQ(std::get<std::int64_t>(*normalize(AnswerKind::integer, "the gcd is 4", *en).value), 4);
  EXPECT_FALSE(normalize(AnswerKind::integer, "four", *en).value);
}

TEST(Normalize, NonAsciiDigits) {
  const auto bn = pack("gcd", Language::bn);
  const auto n = normalize(AnswerKind::integer, "১৪", *bn);
  ASSERT_TRUE(n.value) << n.error;
  EXPECT_EQ(std::get<std::int64_t>(*n.value), 14);
  const auto full = normalize(AnswerKind::integer, "１４", *pack("gcd", Language::ja));
  ASSERT_TRUE(full.value) << full.error;
  EXPECT_EQ(std::get<std::int64_t>(*full.value), 14);
}

TEST(Normalize, DecimalCommaFollowsLanguage) {
  const auto de = normalize(AnswerKind::decimal, "3,5", *pack("gcd", Language::de));
  ASSERT_TRUE(de.value);
  EXPECT_DOUBLE_EQ(std::get<double>(*de.value), 3.5);
  const auto en = normalize(AnswerKind::decimal, "3.5", *pack("gcd", Language::en));
  ASSERT_TRUE(en.value);
  EXPECT_DOUBLE_EQ(std::get<double>(*en.value), 3.5);
}

TEST(Normalize, LocalizedBooleanMapsToCanonicalToken) {
  const auto n = normalize(AnswerKind::localized_boolean, "Vero", *pack("isomorphic_strings", Language::it));
  ASSERT_TRUE(n.value);
  EXPECT_EQ(std::get<std::string>(*n.value), "True");
  const auto f = normalize(AnswerKind::localized_boolean, "**falso**.", *pack("isomorphic_strings", Language::it));
  ASSERT_TRUE(f.value);
  EXPECT_EQ(std::get<std::string>(*f.value), "False");
}

TEST(Normalize, ListOfListsAndGrid) {
  const auto en = pack("group_anagrams", Language::en);
  const auto l = normalize(AnswerKind::list_of_lists, R"([["a", "b"], ["c"]])", *en);
  ASSERT_TRUE(l.value) << l.error;
  EXPECT_EQ(std::get<ListOfLists>(*l.value), (ListOfLists{{"a", "b"}, {"c"}}));
  const auto g = normalize(AnswerKind::grid, "0 1\n1 0", *pack("game_of_life", Language::en));
  ASSERT_TRUE(g.value) << g.error;
  EXPECT_EQ(std::get<Grid>(*g.value), (Grid{{0, 1}, {1, 0}}));
  EXPECT_FALSE(normalize(AnswerKind::list_of_lists, "no idea", *en).value);
}

// ---- verification

TEST(Verify, GcdCorrectAndWrong) {
  const auto inst = forced("gcd", Language::en, {{"numbers", {688, 716}}});
  EXPECT_TRUE(verify(inst, "Let me think.\nFinal answer: 4").correct);
  const auto wrong = verify(inst, "Final answer: 5");
  EXPECT_FALSE(wrong.correct);
  EXPECT_EQ(wrong.failure, FailureReason::wrong_answer);
}

TEST(Verify, EnglishTokenInItalianQuestion) {
  const auto inst = forced("isomorphic_strings", Language::it, {{"first", "zh"}, {"second", "lr"}});
  const auto v = verify(inst, "Risposta finale: True");
  EXPECT_FALSE(v.correct);
  EXPECT_EQ(v.failure, FailureReason::wrong_language_token);
  EXPECT_TRUE(verify(inst, "Risposta finale: Vero").correct);
}

TEST(Verify, LenientModeAcceptsEnglishTokens) {
  auto& s = shared_suite();
  Verifier lenient(s.registry(), s.packs(), VerifyOptions{true});
  const auto inst = forced("isomorphic_strings", Language::it, {{"first", "zh"}, {"second", "lr"}});
  EXPECT_TRUE(lenient.verify(inst, "True").correct);
}

TEST(Verify, EmptyTranscript) {
  const auto inst = forced("gcd", Language::en, {{"numbers", {688, 716}}});
  const auto v = verify(inst, "");
  EXPECT_FALSE(v.correct);
  EXPECT_EQ(v.failure, FailureReason::no_answer_found);
  EXPECT_EQ(verify(inst, "<answer></answer>").failure, FailureReason::no_answer_found);
}

TEST(Verify, ParseFailureKeepsExtractedSpan) {
  const auto inst = forced("gcd", Language::en, {{"numbers", {688, 716}}});
  const auto v = verify(inst, "Final answer: unknown");
  EXPECT_EQ(v.failure, FailureReason::parse_failure);
  ASSERT_TRUE(v.extracted);
  EXPECT_EQ(v.extracted->text, "unknown");
}

TEST(Verify, TagBeatsContradictingMarker) {
  const auto inst = forced("gcd", Language::en, {{"numbers", {688, 716}}});
  EXPECT_TRUE(verify(inst, "Final answer: 5\n<answer>4</answer>").correct);
  EXPECT_FALSE(verify(inst, "Final answer: 4\n<answer>5</answer>").correct);
}

TEST(Verify, MarkerInAnyListedFormOfTheLanguage) {
  for (auto lang : kAllLanguages) {
    const auto inst = make("count_bits", lang, 3, 0);
    for (const auto& m : shared_suite().packs().languages().profile(lang).answer_markers) {
      EXPECT_TRUE(verify(inst, "...\n" + m + " " + inst.metadata["answer_localized"].get<std::string>()).correct)
          << to_string(lang) << " " << m;
    }
  }
}

TEST(Verify, TotalOverRandomUtf8) {
  auto rng = derive_rng(99, 0, "fuzz");
  const std::vector<ProblemInstance> insts = {
      make("gcd", Language::en, 1, 0),          make("isomorphic_strings", Language::ja, 1, 0),
      make("group_anagrams", Language::de, 1, 0), make("game_of_life", Language::ru, 1, 0),
      make("word_sorting", Language::th, 1, 0), make("syllogism", Language::bn, 1, 0)};
  for (int i = 0; i < 10000; ++i) {
    const auto t = random_utf8(rng, 24);
    const auto& inst = insts[static_cast<std::size_t>(i) % insts.size()];
    Verdict v;
    ASSERT_NO_THROW(v = verify(inst, t)) << json(t).dump(-1, ' ', false, json::error_handler_t::replace);
    ASSERT_EQ(v.correct, !v.failure.has_value());
    ASSERT_NO_THROW((void)safe_dump(to_json(v)));
  }
}

TEST(Verify, SoundOnCanonicalAnswersEverywhere) {
  // every task, every language, tagged and marker forms
  for (const auto& id : shared_suite().registry().ids()) {
    for (auto lang : kAllLanguages) {
      for (std::uint64_t i = 0; i < 3; ++i) {
        const auto inst = make(id, lang, 21, i);
        const auto answer = inst.metadata["answer_localized"].get<std::string>();
        EXPECT_TRUE(verify(inst, "<answer>" + answer + "</answer>").correct) << id << "/" << to_string(lang);
        const auto& marker = shared_suite().packs().languages().profile(lang).answer_markers.front();
        EXPECT_TRUE(verify(inst, "reasoning...\n" + marker + "\n" + answer).correct) << id << "/" << to_string(lang);
      }
    }
  }
}

TEST(Verify, VerdictJson) {
  const auto inst = forced("gcd", Language::en, {{"numbers", {688, 716}}});
  const auto j = to_json(verify(inst, "Answer: 4"));
  EXPECT_EQ(j["correct"], true);
  EXPECT_EQ(j["extracted"]["strategy"], "marker");
  EXPECT_TRUE(j["failure_reason"].is_null());
  EXPECT_EQ(to_json(verify(inst, ""))["failure_reason"], "no_answer_found");
}
