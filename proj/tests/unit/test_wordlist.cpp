// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include <doctest.h>

#include <sstream>

#include "idrecon/error.hpp"
#include "idrecon/wordlist.hpp"
#include "../support/oracles.hpp"

using namespace idrecon;
using namespace idrecon::wordlist;
namespace t = idrecon::testing;

namespace {

WordlistConfig cfg(std::vector<CaseVariant> cases, bool leet, std::vector<std::string> suffixes, int depth = 1) {
    WordlistConfig c;
    c.case_variants = std::move(cases);
    c.leet = leet;
    c.suffixes = std::move(suffixes);
    c.combine_depth = depth;
    return c;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("wordlist") {

TEST_CASE("examples") {
    using V = std::vector<std::string>;
    CHECK(generate_wordlist({"olaf"}, cfg({CaseVariant::Lower}, false, {""})).candidates == V{"olaf"});
    auto all = cfg({CaseVariant::Lower, CaseVariant::Capitalized, CaseVariant::Upper}, false, {"", "123"});
    auto wl = generate_wordlist({"olaf", "britta"}, all);
    CHECK(wl.candidates.size() == 12);
    CHECK(wl.candidates == V{"olaf", "olaf123", "Olaf", "Olaf123", "OLAF", "OLAF123", "britta", "britta123",
                             "Britta", "Britta123", "BRITTA", "BRITTA123"});
    CHECK(estimate_count({"olaf", "britta"}, all) == 12);
    CHECK(generate_wordlist({"anna"}, cfg({CaseVariant::Lower}, true, {""})).candidates == V{"anna", "4nn4"});
    CHECK(estimate_count({"aaa"}, cfg({CaseVariant::Lower}, true, {""})) == 2);
    CHECK(estimate_count({"xyz"}, cfg({CaseVariant::Lower}, true, {""})) == 1);
    CHECK(estimate_count({"olaf", "olaf"}, all) == estimate_count({"olaf"}, all));
}

TEST_CASE("pairs case parts separately") {
    auto wl = generate_wordlist({"olaf", "britta"}, cfg({CaseVariant::Capitalized}, false, {""}, 2));
    CHECK(wl.candidates == std::vector<std::string>{"Olaf", "Britta", "OlafBritta", "BrittaOlaf"});
}

TEST_CASE("years and cut") {
    auto c = cfg({CaseVariant::Lower}, false, {"", "1961"});
    c.year_from = 1960;
    c.year_to = 1962;
    CHECK(c.effective_suffixes() == std::vector<std::string>{"", "1961", "1960", "1962"});
    c.max_candidates = 3;
    auto wl = generate_wordlist({"olaf"}, c);
    CHECK(wl.candidates == std::vector<std::string>{"olaf", "olaf1961", "olaf1960"});
    CHECK(estimate_count({"olaf"}, c) == 4);
}

TEST_CASE("errors") {
    CHECK(code_of([] { generate_wordlist({}, WordlistConfig{}); }) == ErrorCode::EmptyTokenSet);
    CHECK(code_of([] { generate_wordlist({"#", "@@"}, WordlistConfig{}); }) == ErrorCode::EmptyTokenSet);
    CHECK(code_of([] { generate_wordlist({"olaf"}, cfg({}, false, {""})); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { generate_wordlist({"olaf"}, cfg({CaseVariant::Lower}, false, {""}, 3)); }) ==
          ErrorCode::InvalidConfig);
    auto c = WordlistConfig{};
    c.max_candidates = 0;
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { config_from_options({{"colour", "red"}}); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { config_from_options({{"case", "lower,title"}}); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { config_from_options({{"years", "1990"}}); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("options") {
    auto c = config_from_options({{"case", "lower,upper"}, {"leet", "true"}, {"suffixes", ",!"},
                                  {"depth", "2"}, {"max", "50"}, {"years", "1950-1952"}});
    CHECK(c.case_variants == std::vector<CaseVariant>{CaseVariant::Lower, CaseVariant::Upper});
    CHECK(c.leet);
    CHECK(c.suffixes == std::vector<std::string>{"", "!"});
    CHECK(c.combine_depth == 2);
    CHECK(c.max_candidates == 50);
    CHECK(c.year_from == 1950);
    CHECK(c.year_to == 1952);
    CHECK(split_list(",123") == std::vector<std::string>{"", "123"});
}

TEST_CASE("write format") {
    Wordlist w;
    w.candidates = {"a", "b"};
    std::ostringstream out;
    CHECK(write_wordlist(w, out) == 4);
    CHECK(out.str() == "a\nb\n");
    std::ostringstream empty;
    CHECK(write_wordlist(Wordlist{}, empty) == 0);
    CHECK(empty.str().empty());
    auto wl = generate_wordlist({"Grüße", "olaf"}, WordlistConfig{});
    CHECK(read_wordlist(render_wordlist(wl)) == wl.candidates);
    std::ostringstream bad;
    bad.setstate(std::ios::badbit);
    CHECK(code_of([&] { write_wordlist(w, bad); }) == ErrorCode::SinkError);
}

TEST_CASE("oracle over config corners") {
    std::vector<std::vector<std::string>> sets{
        {"olaf"}, {"olaf", "britta"}, {"anna", "Otto", "sesam"}, {"Olaf", "Scholz", "Britta", "Ernst"}};
    std::vector<std::vector<std::pair<CaseVariant, t::OracleCase>>> case_sets{
        {{CaseVariant::Lower, t::OracleCase::Lower}},
        {{CaseVariant::Lower, t::OracleCase::Lower}, {CaseVariant::Capitalized, t::OracleCase::Capitalized},
         {CaseVariant::Upper, t::OracleCase::Upper}},
        {{CaseVariant::Upper, t::OracleCase::Upper}, {CaseVariant::Lower, t::OracleCase::Lower}}};
    std::vector<std::vector<std::string>> suffix_sets{{""}, {"", "123", "!"}, {"!", ""}};
    for (const auto& tokens : sets) {
        for (const auto& cs : case_sets) {
            for (bool leet : {false, true}) {
                for (const auto& sfx : suffix_sets) {
                    for (int depth : {1, 2}) {
                        std::vector<CaseVariant> lib;
                        std::vector<t::OracleCase> ora;
                        for (auto [l, o] : cs) {
                            lib.push_back(l);
                            ora.push_back(o);
                        }
                        auto c = cfg(lib, leet, sfx, depth);
                        auto expect = t::wordlist_oracle(tokens, ora, leet, sfx, depth, 100000);
                        auto got = generate_wordlist(tokens, c);
                        CHECK(got.candidates == expect);
                        CHECK(estimate_count(tokens, c) == expect.size());
                        CHECK(generate_wordlist(tokens, c).config_fingerprint == got.config_fingerprint);
                        c.max_candidates = 5;
                        CHECK(generate_wordlist(tokens, c).candidates ==
                              t::wordlist_oracle(tokens, ora, leet, sfx, depth, 5));
                    }
                }
            }
        }
    }
}

TEST_CASE("fingerprint covers tokens and config") {
    WordlistConfig c;
    auto a = generate_wordlist({"olaf"}, c).config_fingerprint;
    CHECK(a.size() == 64);
    CHECK(generate_wordlist({"britta"}, c).config_fingerprint != a);
    c.leet = true;
    CHECK(generate_wordlist({"olaf"}, c).config_fingerprint != a);
}

}
