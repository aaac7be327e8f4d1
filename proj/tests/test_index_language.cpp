#include <doctest.h>

#include <random>
#include <string>

#include "dmm/index_language.hpp"

using namespace dmm;

TEST_CASE("parsing the three name shapes") {
  IndexName n = parse_index("sum2@i1\\acc");
  CHECK(n.type_name == "sum2");
  CHECK(n.kind == IndexName::Kind::Input);
  CHECK(n.k == 1);
  CHECK(n.simple_name == "acc");

  n = parse_index("sum2@o1%acc");
  CHECK(n.kind == IndexName::Kind::Output);
  CHECK(n.k == 1);

  n = parse_index("self@main");
  CHECK(n.kind == IndexName::Kind::Neuron);
  CHECK(n.type_name == "self");
  CHECK(n.simple_name == "main");
  CHECK(n.k == 0);
}

TEST_CASE("type names may use their richer alphabet") {
  IndexName n = parse_index("max(2,3)+relu.v1@o2%gate-a_b");
  CHECK(n.type_name == "max(2,3)+relu.v1");
  CHECK(n.kind == IndexName::Kind::Output);
  CHECK(n.k == 2);
  CHECK(n.simple_name == "gate-a_b");
  CHECK(format_index(n) == "max(2,3)+relu.v1@o2%gate-a_b");
}

TEST_CASE("malformed names are rejected") {
  CHECK_THROWS_AS(parse_index(""), ParseError);
  CHECK_THROWS_AS(parse_index("noseparator"), ParseError);
  CHECK_THROWS_AS(parse_index("a@@b"), ParseError);
  CHECK_THROWS_AS(parse_index("bad%%name"), ParseError);
  CHECK_THROWS_AS(parse_index("t@i\\x"), ParseError);    // missing slot
  CHECK_THROWS_AS(parse_index("t@i01\\x"), ParseError);  // leading zero
  CHECK_THROWS_AS(parse_index("t@i0\\x"), ParseError);   // slots are 1-based
  CHECK_THROWS_AS(parse_index("t@o1\\x"), ParseError);   // wrong separator
  CHECK_THROWS_AS(parse_index("t@i1%x"), ParseError);    // wrong separator
  CHECK_THROWS_AS(parse_index("t@x1\\x"), ParseError);   // unknown field
  CHECK_THROWS_AS(parse_index("t@i1\\"), ParseError);    // empty simple name
  CHECK_THROWS_AS(parse_index("@i1\\x"), ParseError);    // empty type name
  CHECK_THROWS_AS(parse_index("t@i1\\a b"), ParseError); // space
  CHECK_THROWS_AS(parse_index("t@na(me)"), ParseError);  // '(' not in simple
  CHECK_THROWS_AS(parse_index("a@b@c"), ParseError);
  CHECK_THROWS_AS(parse_index("a@i1\\b\\c"), ParseError);
}

TEST_CASE("formatting validates alphabets") {
  IndexName bad;
  bad.type_name = "has space";
  bad.simple_name = "x";
  CHECK_THROWS_AS(format_index(bad), InvalidAlphabet);

  bad.type_name = "ok";
  bad.simple_name = "has(parens)";  // parens are type-only characters
  CHECK_THROWS_AS(format_index(bad), InvalidAlphabet);

  IndexName slot;
  slot.type_name = "t";
  slot.simple_name = "x";
  slot.kind = IndexName::Kind::Input;
  slot.k = 0;
  CHECK_THROWS_AS(format_index(slot), InvalidAlphabet);
}

TEST_CASE("format and parse are mutually inverse on random names") {
  std::mt19937 rng(42);
  const std::string simple_alpha =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-";
  const std::string type_alpha =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_()+,.";
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_int_distribution<int> slot(1, 99);
  for (int i = 0; i < 10000; ++i) {
    IndexName n;
    int tl = len(rng);
    std::uniform_int_distribution<int> tpick(0, int(type_alpha.size()) - 1);
    for (int c = 0; c < tl; ++c) n.type_name += type_alpha[std::size_t(tpick(rng))];
    int sl = len(rng);
    std::uniform_int_distribution<int> spick(0, int(simple_alpha.size()) - 1);
    for (int c = 0; c < sl; ++c) n.simple_name += simple_alpha[std::size_t(spick(rng))];
    switch (kind(rng)) {
      case 0:
        n.kind = IndexName::Kind::Neuron;
        break;
      case 1:
        n.kind = IndexName::Kind::Input;
        n.k = slot(rng);
        break;
      default:
        n.kind = IndexName::Kind::Output;
        n.k = slot(rng);
        break;
    }
    std::string s = format_index(n);
    CHECK(parse_index(s) == n);
    CHECK(format_index(parse_index(s)) == s);
  }
}

TEST_CASE("registry validation bounds the slot number") {
  ArityTable table;
  table["sum2"] = {2, 1};
  table["tap"] = {0, 3};

  CHECK(validate_against_registry(parse_index("sum2@i2\\a"), table));
  CHECK(!validate_against_registry(parse_index("sum2@i3\\a"), table));
  CHECK(validate_against_registry(parse_index("sum2@o1%a"), table));
  CHECK(!validate_against_registry(parse_index("sum2@o2%a"), table));
  CHECK(validate_against_registry(parse_index("tap@o3%a"), table));
  CHECK(!validate_against_registry(parse_index("tap@i1\\a"), table));
  CHECK(validate_against_registry(parse_index("sum2@plain"), table));
  CHECK_THROWS_AS(validate_against_registry(parse_index("nope@i1\\a"), table),
                  UnknownType);
}
