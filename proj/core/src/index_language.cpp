#include "dmm/index_language.hpp"

#include <cctype>

namespace dmm {
namespace {

bool all_of_alphabet(const std::string& s, bool (*pred)(char)) {
  for (char c : s) {
    if (!pred(c)) return false;
  }
  return !s.empty();
}

// Field names are i<k> / o<k> in decimal without leading zeros.
std::string field_name(IndexName::Kind kind, int k) {
  return (kind == IndexName::Kind::Input ? "i" : "o") + std::to_string(k);
}

int parse_slot(const std::string& field, char tag, const std::string& where) {
  if (field.size() < 2 || field[0] != tag) {
    throw ParseError("bad field name '" + field + "' in '" + where + "'");
  }
  if (field[1] == '0') {
    throw ParseError("leading zero in field name '" + field + "'");
  }
  int k = 0;
  for (std::size_t i = 1; i < field.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(field[i]))) {
      throw ParseError("bad field name '" + field + "' in '" + where + "'");
    }
    k = k * 10 + (field[i] - '0');
    if (k > 1'000'000) throw ParseError("field number out of range");
  }
  return k;
}

}  // namespace

bool is_simple_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool is_type_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '(' || c == ')' || c == '+' || c == ',' || c == '.';
}

std::string format_index(const IndexName& n) {
  if (!all_of_alphabet(n.type_name, is_type_name_char)) {
    throw InvalidAlphabet("type name '" + n.type_name +
                          "' violates the type alphabet");
  }
  if (!all_of_alphabet(n.simple_name, is_simple_name_char)) {
    throw InvalidAlphabet("simple name '" + n.simple_name +
                          "' violates the simple-name alphabet");
  }
  switch (n.kind) {
    case IndexName::Kind::Neuron:
      return n.type_name + "@" + n.simple_name;
    case IndexName::Kind::Input:
      if (n.k < 1) throw InvalidAlphabet("input slot must be >= 1");
      return n.type_name + "@" + field_name(n.kind, n.k) + "\\" +
             n.simple_name;
    case IndexName::Kind::Output:
      if (n.k < 1) throw InvalidAlphabet("output slot must be >= 1");
      return n.type_name + "@" + field_name(n.kind, n.k) + "%" +
             n.simple_name;
  }
  throw InvalidAlphabet("unreachable kind");
}

IndexName parse_index(const std::string& s) {
  auto at = s.find('@');
  if (at == std::string::npos) throw ParseError("missing '@' in '" + s + "'");
  if (s.find('@', at + 1) != std::string::npos) {
    throw ParseError("multiple '@' separators in '" + s + "'");
  }
  IndexName n;
  n.type_name = s.substr(0, at);
  if (!all_of_alphabet(n.type_name, is_type_name_char)) {
    throw ParseError("bad type name segment in '" + s + "'");
  }
  std::string rest = s.substr(at + 1);

  auto bs = rest.find('\\');
  auto pc = rest.find('%');
  if (bs != std::string::npos && pc != std::string::npos) {
    throw ParseError("both input and output separators in '" + s + "'");
  }
  if (bs != std::string::npos) {
    if (rest.find('\\', bs + 1) != std::string::npos) {
      throw ParseError("multiple '\\' separators in '" + s + "'");
    }
    n.kind = IndexName::Kind::Input;
    n.k = parse_slot(rest.substr(0, bs), 'i', s);
    n.simple_name = rest.substr(bs + 1);
  } else if (pc != std::string::npos) {
    if (rest.find('%', pc + 1) != std::string::npos) {
      throw ParseError("multiple '%' separators in '" + s + "'");
    }
    n.kind = IndexName::Kind::Output;
    n.k = parse_slot(rest.substr(0, pc), 'o', s);
    n.simple_name = rest.substr(pc + 1);
  } else {
    n.kind = IndexName::Kind::Neuron;
    n.simple_name = rest;
  }
  if (!all_of_alphabet(n.simple_name, is_simple_name_char)) {
    throw ParseError("bad simple name segment in '" + s + "'");
  }
  return n;
}

bool validate_against_registry(const IndexName& n, const ArityTable& table) {
  auto it = table.find(n.type_name);
  if (it == table.end()) {
    throw UnknownType("unknown neuron type '" + n.type_name + "'");
  }
  const auto [m, nn] = it->second;
  switch (n.kind) {
    case IndexName::Kind::Neuron:
      return true;
    case IndexName::Kind::Input:
      return n.k >= 1 && n.k <= m;
    case IndexName::Kind::Output:
      return n.k >= 1 && n.k <= nn;
  }
  return false;
}

}  // namespace dmm
