#include "qsca/circuit.hpp"

#include "qsca/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>

namespace qsca {

void Circuit::validate() const {
  if (num_qubits <= 0) {
    throw Error(ErrorKind::Format, "circuit needs at least one qubit");
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    const int want = arity(op.gate);
    if (want >= 0 && static_cast<int>(op.qubits.size()) != want) {
      throw Error(ErrorKind::Format, "op " + std::to_string(i) + " (" +
                                         to_string(op.gate) + ") has wrong arity");
    }
    std::set<int> seen;
    for (int q : op.qubits) {
      if (q < 0 || q >= num_qubits) {
        throw Error(ErrorKind::Format, "op " + std::to_string(i) + " uses qubit " +
                                           std::to_string(q) + " of " +
                                           std::to_string(num_qubits));
      }
      if (!seen.insert(q).second) {
        throw Error(ErrorKind::Format,
                    "op " + std::to_string(i) + " repeats qubit " + std::to_string(q));
      }
    }
  }
}

std::size_t Circuit::count(Gate gate) const {
  return static_cast<std::size_t>(
      std::count_if(ops.begin(), ops.end(), [&](const GateApp& op) { return op.gate == gate; }));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
      ++j;
    }
    if (j > i) {
      out.push_back(s.substr(i, j - i));
    }
    i = j;
  }
  return out;
}

bool parse_int(std::string_view s, int& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_real(std::string_view s, double& out) {
  // strtod handles the full grammar including exponents; require that it
  // consumes everything.
  const std::string buf(s);
  if (buf.empty()) {
    return false;
  }
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && std::isfinite(out);
}

int parse_qubit(std::string_view tok, int line, int num_qubits) {
  int q = -1;
  if (tok.size() < 2 || tok[0] != 'q' || !parse_int(tok.substr(1), q) || q < 0) {
    throw ParseError(line, "bad qubit operand '" + std::string(tok) + "'");
  }
  if (q >= num_qubits) {
    throw ParseError(line, "qubit q" + std::to_string(q) + " out of range (circuit has " +
                               std::to_string(num_qubits) + ")");
  }
  return q;
}

} // namespace

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  bool have_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      nl = text.size();
    }
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      if (nl == text.size()) {
        break;
      }
      continue;
    }
    const auto toks = split_ws(line);
    if (!have_header) {
      int n = 0;
      if (toks.size() != 2 || toks[0] != "qubits" || !parse_int(toks[1], n) || n <= 0) {
        throw ParseError(line_no, "expected header 'qubits N'");
      }
      c.num_qubits = n;
      have_header = true;
      continue;
    }

    auto head = toks[0];
    std::string_view angle_text;
    bool has_angle = false;
    if (const auto paren = head.find('('); paren != std::string_view::npos) {
      if (head.back() != ')') {
        throw ParseError(line_no, "malformed angle in '" + std::string(head) + "'");
      }
      angle_text = head.substr(paren + 1, head.size() - paren - 2);
      head = head.substr(0, paren);
      has_angle = true;
    }
    const auto gate = parse_gate(head);
    if (!gate) {
      throw ParseError(line_no, "unknown gate '" + std::string(head) + "'");
    }
    GateApp op;
    op.gate = *gate;
    if (*gate == Gate::RZ) {
      if (!has_angle || !parse_real(trim(angle_text), op.angle)) {
        throw ParseError(line_no, "malformed angle for rz");
      }
    } else if (has_angle) {
      throw ParseError(line_no, std::string(to_string(*gate)) + " takes no angle");
    }
    for (std::size_t i = 1; i < toks.size(); ++i) {
      const int q = parse_qubit(toks[i], line_no, c.num_qubits);
      if (std::find(op.qubits.begin(), op.qubits.end(), q) != op.qubits.end()) {
        throw ParseError(line_no, "duplicate operand q" + std::to_string(q));
      }
      op.qubits.push_back(q);
    }
    const int want = arity(*gate);
    if (want >= 0 && static_cast<int>(op.qubits.size()) != want) {
      throw ParseError(line_no, std::string(to_string(*gate)) + " expects " +
                                    std::to_string(want) + " operand(s)");
    }
    c.ops.push_back(std::move(op));
  }
  if (!have_header) {
    throw ParseError(line_no == 0 ? 1 : line_no, "missing 'qubits N' header");
  }
  return c;
}

std::string print_circuit(const Circuit& circuit) {
  std::ostringstream os;
  os << "qubits " << circuit.num_qubits << "\n";
  char buf[64];
  for (const auto& op : circuit.ops) {
    os << to_string(op.gate);
    if (op.gate == Gate::RZ) {
      std::snprintf(buf, sizeof buf, "%.17g", op.angle);
      os << "(" << buf << ")";
    }
    for (int q : op.qubits) {
      os << " q" << q;
    }
    os << "\n";
  }
  return os.str();
}

Circuit strip_rz(const Circuit& circuit) {
  Circuit out = circuit;
  std::erase_if(out.ops, [](const GateApp& op) { return op.gate == Gate::RZ; });
  return out;
}

} // namespace qsca
