#pragma once

#include <map>
#include <string>
#include <utility>

#include "dmm/errors.hpp"

namespace dmm {

// Structured names of neurons, neuron inputs, and neuron outputs over a
// three-alphabet grammar. The separators are reserved:
//   '@' between the type name and the rest,
//   '\' after an input field name,
//   '%' after an output field name.
// Concretely:
//   neuron        t@s
//   input k of t  t@ik\s
//   output k of t t@ok%s
// Type names draw on [A-Za-z0-9_()+,.], simple names on [A-Za-z0-9_-].
struct IndexName {
  enum class Kind { Neuron, Input, Output };

  std::string type_name;
  Kind kind = Kind::Neuron;
  int k = 0;  // 1-based slot for Input/Output, 0 for Neuron
  std::string simple_name;

  friend bool operator==(const IndexName&, const IndexName&) = default;
};

bool is_simple_name_char(char c);
bool is_type_name_char(char c);

// Formats an IndexName; throws InvalidAlphabet if a field violates its
// alphabet or a slot number is out of range.
std::string format_index(const IndexName& n);

// Inverse of format_index on its range; throws ParseError otherwise.
IndexName parse_index(const std::string& s);

// Registry rows are (input arity M, output arity N) per type name.
using ArityTable = std::map<std::string, std::pair<int, int>>;

// True iff the slot number fits the registered arities. Throws UnknownType
// when the type is absent from the table.
bool validate_against_registry(const IndexName& n, const ArityTable& table);

}  // namespace dmm
