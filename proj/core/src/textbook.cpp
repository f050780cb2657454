#include "qsca/textbook.hpp"

#include "qsca/error.hpp"
#include "qsca/rng.hpp"

#include <cstdlib>
#include <numbers>

namespace qsca {

const char* to_string(TextbookAlgo algo) {
  switch (algo) {
  case TextbookAlgo::BV:
    return "bv";
  case TextbookAlgo::DJ:
    return "dj";
  case TextbookAlgo::GS:
    return "gs";
  }
  return "?";
}

std::optional<TextbookAlgo> parse_algo(std::string_view name) {
  for (auto a : {TextbookAlgo::BV, TextbookAlgo::DJ, TextbookAlgo::GS}) {
    if (name == to_string(a)) {
      return a;
    }
  }
  return std::nullopt;
}

std::vector<std::string> all_bitstrings(int n) {
  if (n < 0 || n > 20) {
    throw Error(ErrorKind::Size, "bit strings of length " + std::to_string(n));
  }
  std::vector<std::string> out;
  for (unsigned v = 0; v < (1u << n); ++v) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
      if (v >> i & 1u) {
        s[static_cast<std::size_t>(n - 1 - i)] = '1';
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

int textbook_qubits(TextbookAlgo algo, int n) {
  return algo == TextbookAlgo::GS ? n : n + 1;
}

void append_hadamard(Circuit& circuit, int q) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  circuit.add(GateApp::rz(half_pi, q)).add(GateApp::sx(q)).add(GateApp::rz(half_pi, q));
}

void append_long_range_cx(Circuit& circuit, int control, int target) {
  if (control == target) {
    throw Error(ErrorKind::Format, "long-range cx needs distinct qubits");
  }
  const int step = target > control ? 1 : -1;
  const int d = std::abs(target - control);
  const auto p = [&](int k) { return control + step * k; };
  const auto cx = [&](int a, int b) { circuit.add(GateApp::cx(p(a), p(b))); };
  if (d == 1) {
    cx(0, 1);
    return;
  }
  // Sweep the control parity forward to the target, unwind it, then repeat
  // from p1 to cancel the intermediate qubits' contributions.
  for (int k = 0; k < d; ++k) {
    cx(k, k + 1);
  }
  for (int k = d - 2; k >= 0; --k) {
    cx(k, k + 1);
  }
  for (int k = 1; k < d; ++k) {
    cx(k, k + 1);
  }
  for (int k = d - 2; k >= 1; --k) {
    cx(k, k + 1);
  }
}

namespace {

std::vector<int> parse_bits(int n, std::string_view param) {
  if (n < 1) {
    throw Error(ErrorKind::Format, "textbook circuits need n >= 1");
  }
  if (static_cast<int>(param.size()) != n) {
    throw Error(ErrorKind::Format, "parameter '" + std::string(param) + "' must have " +
                                       std::to_string(n) + " bits");
  }
  std::vector<int> bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const char ch = param[static_cast<std::size_t>(n - 1 - i)];
    if (ch != '0' && ch != '1') {
      throw Error(ErrorKind::Format, "parameter '" + std::string(param) + "' is not binary");
    }
    bits[static_cast<std::size_t>(i)] = ch - '0';
  }
  return bits;
}

// diag((-1)^{[x == s]}) up to global phase, as parity-phase gadgets.
void append_marked_phase(Circuit& c, const std::vector<int>& s) {
  const int n = static_cast<int>(s.size());
  const double scale = -2.0 * std::numbers::pi / static_cast<double>(1u << n);
  const auto angle = [&](unsigned subset) {
    int dot = 0;
    for (int i = 0; i < n; ++i) {
      if (subset >> i & 1u) {
        dot ^= s[static_cast<std::size_t>(i)];
      }
    }
    return dot ? -scale : scale;
  };
  // Subsets whose highest member is m: qubit m accumulates the parity of the
  // lower members along a Gray-code walk, then is restored.
  for (int m = n - 1; m >= 0; --m) {
    unsigned state = 0;
    const unsigned count = 1u << m;
    for (unsigned k = 0; k < count; ++k) {
      const unsigned gray = k ^ (k >> 1);
      if (k > 0) {
        const unsigned flipped = gray ^ state;
        int b = 0;
        while (!(flipped >> b & 1u)) {
          ++b;
        }
        append_long_range_cx(c, m - 1 - b, m);
        state = gray;
      }
      unsigned subset = 1u << m;
      for (int b = 0; b < m; ++b) {
        if (state >> b & 1u) {
          subset |= 1u << (m - 1 - b);
        }
      }
      c.add(GateApp::rz(angle(subset), m));
    }
    for (int b = 0; b < m; ++b) {
      if (state >> b & 1u) {
        append_long_range_cx(c, m - 1 - b, m);
      }
    }
  }
}

} // namespace

Circuit textbook_oracle(TextbookAlgo algo, int n, std::string_view param) {
  const auto bits = parse_bits(n, param);
  Circuit c;
  c.num_qubits = textbook_qubits(algo, n);
  c.name = std::string(to_string(algo)) + "-" + std::string(param);
  switch (algo) {
  case TextbookAlgo::BV:
    for (int i = 0; i < n; ++i) {
      if (bits[static_cast<std::size_t>(i)]) {
        append_long_range_cx(c, i, n);
      }
    }
    break;
  case TextbookAlgo::DJ:
    for (int i = 0; i < n; ++i) {
      if (bits[static_cast<std::size_t>(i)]) {
        c.add(GateApp::rz(std::numbers::pi, i));
      }
    }
    break;
  case TextbookAlgo::GS:
    append_marked_phase(c, bits);
    break;
  }
  return c;
}

Circuit gen_textbook(TextbookAlgo algo, int n, std::string_view param) {
  const Circuit oracle = textbook_oracle(algo, n, param);
  Circuit c;
  c.num_qubits = oracle.num_qubits;
  c.name = oracle.name;
  for (int q = 0; q < n; ++q) {
    append_hadamard(c, q);
  }
  if (algo != TextbookAlgo::GS) {
    c.add(GateApp::x(n));
    append_hadamard(c, n);
  }
  c.ops.insert(c.ops.end(), oracle.ops.begin(), oracle.ops.end());
  if (algo == TextbookAlgo::GS) {
    for (int q = 0; q < n; ++q) {
      append_hadamard(c, q);
    }
    append_marked_phase(c, std::vector<int>(static_cast<std::size_t>(n), 0));
  }
  for (int q = 0; q < n; ++q) {
    append_hadamard(c, q);
  }
  for (int q = 0; q < n; ++q) {
    c.add(GateApp::measure(q));
  }
  return c;
}

const char* to_string(AnsatzKind kind) {
  switch (kind) {
  case AnsatzKind::Linear:
    return "linear";
  case AnsatzKind::Reverse:
    return "reverse";
  case AnsatzKind::Brick:
    return "brick";
  }
  return "?";
}

Circuit gen_ansatz(AnsatzKind kind, int n, int layers, std::uint64_t angle_seed) {
  if (n < 2 || layers < 1) {
    throw Error(ErrorKind::Format, "ansatz needs n >= 2 and layers >= 1");
  }
  Rng rng(angle_seed);
  Circuit c;
  c.num_qubits = n;
  c.name = std::string("ansatz-") + to_string(kind);
  const auto angle = [&] { return rng.uniform_real(-std::numbers::pi, std::numbers::pi); };
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) {
      c.add(GateApp::rz(angle(), q)).add(GateApp::sx(q)).add(GateApp::rz(angle(), q));
    }
    switch (kind) {
    case AnsatzKind::Linear:
      for (int q = 0; q + 1 < n; ++q) {
        c.add(GateApp::cx(q, q + 1));
      }
      break;
    case AnsatzKind::Reverse:
      for (int q = n - 2; q >= 0; --q) {
        c.add(GateApp::cx(q + 1, q));
      }
      break;
    case AnsatzKind::Brick:
      for (int start : {0, 1}) {
        for (int q = start; q + 1 < n; q += 2) {
          c.add(GateApp::cx(q, q + 1));
        }
      }
      break;
    }
  }
  for (int q = 0; q < n; ++q) {
    c.add(GateApp::measure(q));
  }
  return c;
}

} // namespace qsca
