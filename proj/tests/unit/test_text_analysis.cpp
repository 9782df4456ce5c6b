// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include <doctest.h>

#include <random>

#include "idrecon/error.hpp"
#include "idrecon/text_analysis.hpp"

using namespace idrecon;
using namespace idrecon::text;

namespace {

Gazetteers small() {
    Gazetteers g;
    g.given_names = {"olaf", "britta"};
    g.cities = {"berlin", "new york"};
    g.org_suffixes = {"gmbh"};
    g.ignored = {"frau", "herr"};
    return g;
}

std::vector<std::pair<std::string, EntityClass>> flat(const std::vector<NamedEntity>& es) {
    std::vector<std::pair<std::string, EntityClass>> out;
    for (const auto& e : es) out.emplace_back(e.surface, e.klass);
    return out;
}

class ListNer final : public NerAdapter {
  public:
    explicit ListNer(std::vector<AdapterToken> t) : tokens_(std::move(t)) {}
    std::vector<AdapterToken> extract(std::string_view) override { return tokens_; }

  private:
    std::vector<AdapterToken> tokens_;
};

}  // namespace

TEST_SUITE("text_analysis") {

TEST_CASE("german sentence") {
    std::string s = "Heute trifft Olaf seine Frau Britta Ernst.";
    auto es = extract_entities(s, RuleBased{}, small(), NodeId{"n4"});
    using P = std::pair<std::string, EntityClass>;
    CHECK(flat(es) == std::vector<P>{{"Olaf", EntityClass::PER}, {"Britta", EntityClass::PER},
                                     {"Ernst", EntityClass::MISC}});
    CHECK(es[0].span == Span{13, 17});
    CHECK(es[0].source_node == NodeId{"n4"});
}

TEST_CASE("hashtags and gazetteers") {
    using P = std::pair<std::string, EntityClass>;
    CHECK(flat(extract_entities("#Bundeskanzler in Berlin", RuleBased{}, small())) ==
          std::vector<P>{{"Bundeskanzler", EntityClass::MISC}, {"Berlin", EntityClass::LOC}});
    auto es = extract_entities("Wir fliegen nach New York. @britta kommt mit.", RuleBased{}, small());
    CHECK(flat(es) == std::vector<P>{{"New York", EntityClass::LOC}, {"britta", EntityClass::PER}});
    auto orgs = extract_entities("Er arbeitet bei Muster Bau GmbH seit Jahren.", RuleBased{}, small());
    REQUIRE(!orgs.empty());
    CHECK(orgs[0].surface == "Muster Bau GmbH");
    CHECK(orgs[0].klass == EntityClass::ORG);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(extract_entities("", RuleBased{}, small()), Error);
    try {
        extract_entities("Hallo", External{"x", nullptr}, small());
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AdapterUnavailable);
    }
    auto adapter = std::make_shared<ListNer>(std::vector<AdapterToken>{{"Zzz", EntityClass::PER}});
    try {
        extract_entities("Hallo Welt", External{"list", adapter}, small());
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotFound);
    }
}

TEST_CASE("external adapter tokens are span-resolved in order") {
    auto adapter = std::make_shared<ListNer>(std::vector<AdapterToken>{
        {"ernst", EntityClass::PER}, {"ernst", EntityClass::MISC}});
    auto es = extract_entities("Ernst ist ernst", External{"list", adapter}, small());
    REQUIRE(es.size() == 2);
    CHECK(es[0].span == Span{0, 5});
    CHECK(es[1].span == Span{10, 15});
    CHECK(es[1].surface == "ernst");
}

TEST_CASE("resolve_span") {
    CHECK(resolve_span("britta", "Heute trifft Olaf seine Frau Britta Ernst", 0) == Span{29, 35});
    CHECK(resolve_span("ernst", "Ernst ist ernst", 1) == Span{10, 15});
    CHECK(resolve_span("ernst", "Ernsthaft Ernst", 0) == Span{10, 15});
    CHECK(resolve_span("über", "Grüße über alles", 0) == Span{6, 10});
    CHECK_THROWS_AS(resolve_span("xyz", "abc", 0), Error);
    CHECK_THROWS_AS(resolve_span("", "abc", 0), Error);
}

TEST_CASE("clean_tokens") {
    using V = std::vector<std::string>;
    CHECK(clean_tokens({"#Bundeskanzler"}) == V{"Bundeskanzler"});
    CHECK(clean_tokens({"@OlafScholz", "olafscholz"}) == V{"OlafScholz"});
    CHECK(clean_tokens({"ab", "!!"}).empty());
    CHECK(clean_tokens({"\"Berlin!\"", "(Olaf)"}) == V{"Berlin", "Olaf"});
    // NFD input folds to the NFC form
    CHECK(clean_tokens({"Gru\xCC\x88\xC3\x9F" "e", "Grüße"}) == V{"Grüße"});
    V mixed{"#a#b", "@@x@y", "Olaf,", "olaf", "  Britta  ", "ÄÖÜ"};
    auto once = clean_tokens(mixed);
    CHECK(clean_tokens(once) == once);
}

TEST_CASE("rank_tokens") {
    auto r = rank_tokens({"b", "a", "b"});
    REQUIRE(r.size() == 2);
    CHECK(r[0].token == "b");
    CHECK(r[0].count == 2);
    CHECK(r[1].token == "a");
    r = rank_tokens({"a", "b"});
    CHECK(r[0].token == "a");
    CHECK(rank_tokens({}).empty());
    r = rank_tokens({"Olaf", "olaf", "OLAF", "Britta"});
    CHECK(r[0].token == "Olaf");
    CHECK(r[0].count == 3);
    CHECK(r[0].first_seen == 0);
    CHECK(r[1].first_seen == 3);
}

TEST_CASE("span faithfulness over fuzzed text") {
    std::mt19937 rng(7);
    std::vector<std::string> words{"Olaf", "britta", "Berlin", "und", "#Kanzler", "@olaf", "Frau",
                                   "Ärger", "über", "ist", ".", "!", "Muster", "GmbH", "New", "York",
                                   "straße", "?", "Ernst"};
    for (int i = 0; i < 300; ++i) {
        std::string s;
        int n = 1 + static_cast<int>(rng() % 14);
        for (int w = 0; w < n; ++w) {
            if (w) s += rng() % 5 ? " " : "  ";
            s += words[rng() % words.size()];
        }
        auto es = extract_entities(s, RuleBased{}, small());
        for (const auto& e : es) {
            CHECK(e.span.start < e.span.end);
            CHECK(slice(s, e.span) == e.surface);
        }
        CHECK(extract_entities(s, RuleBased{}, small()) == es);
        std::vector<std::string> surfaces;
        for (const auto& e : es) surfaces.push_back(e.surface);
        auto ranked = rank_tokens(surfaces);
        std::size_t total = 0;
        for (const auto& t : ranked) total += t.count;
        CHECK(total == surfaces.size());
    }
}

TEST_CASE("token pipeline") {
    std::string s = "Olaf trifft Britta. Britta lacht, #Britta und @olaf auch.";
    auto stats = token_pipeline(s, RuleBased{}, small());
    REQUIRE(stats.size() == 2);
    CHECK(stats[0].token == "Britta");
    CHECK(stats[0].count == 3);
    CHECK(stats[1].token == "Olaf");
    CHECK(stats[1].count == 2);
}

TEST_CASE("builtin gazetteers load") {
    auto g = Gazetteers::builtin();
    CHECK(g.given_names.count("olaf"));
    CHECK(g.cities.count("berlin"));
    CHECK(g.ignored.count("frau"));
    CHECK(Gazetteers::parse_list("# c\nOlaf\n\n  britta \n") == std::set<std::string>{"olaf", "britta"});
}

}
