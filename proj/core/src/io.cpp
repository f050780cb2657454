#include "qsca/io.hpp"

#include "qsca/error.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qsca::io {

using json = nlohmann::ordered_json;

namespace {

// Runs a reader body, translating library-level failures into Error(Format).
template <typename F>
auto guarded(std::string_view what, F&& body) {
  try {
    return body();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Format, std::string(what) + ": " + e.what());
  }
}

json parse(std::string_view text) { return json::parse(text.begin(), text.end()); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Gate gate_from(const json& j) {
  const auto name = j.get<std::string>();
  const auto g = parse_gate(name);
  if (!g) {
    throw Error(ErrorKind::Format, "unknown gate '" + name + "'");
  }
  return *g;
}

json channel_json(Channel ch) { return {{"kind", to_string(ch.kind)}, {"index", ch.index}}; }

Channel channel_from(const json& j) {
  if (j.is_string()) {
    return parse_channel(j.get<std::string>());
  }
  const auto kind = j.at("kind").get<std::string>();
  const int index = j.at("index").get<int>();
  if (kind == "drive") {
    return Channel::drive(index);
  }
  if (kind == "control") {
    return Channel::control(index);
  }
  throw Error(ErrorKind::Format, "unknown channel kind '" + kind + "'");
}

json shape_json(const PulseShape& s) {
  json j;
  j["variant"] = to_string(s.kind);
  j["duration"] = s.duration;
  j["amp"] = {s.amp.real(), s.amp.imag()};
  j["sigma"] = s.sigma;
  if (s.kind == PulseKind::Drag) {
    j["beta"] = s.beta;
  } else {
    j["width"] = s.width;
  }
  return j;
}

PulseShape shape_from(const json& j) {
  const auto variant = j.at("variant").get<std::string>();
  const auto& amp = j.at("amp");
  if (!amp.is_array() || amp.size() != 2) {
    throw Error(ErrorKind::Format, "amp must be [re, im]");
  }
  const std::complex<double> a{amp[0].get<double>(), amp[1].get<double>()};
  const int duration = j.at("duration").get<int>();
  const double sigma = j.at("sigma").get<double>();
  if (variant == "Drag") {
    return PulseShape::drag(duration, a, sigma, j.value("beta", 0.0));
  }
  if (variant == "GaussianSquare") {
    return PulseShape::gaussian_square(duration, a, sigma, j.at("width").get<int>());
  }
  throw Error(ErrorKind::Format, "unknown pulse variant '" + variant + "'");
}

} // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string device_to_json(const Device& device) {
  json j;
  j["name"] = device.name;
  j["num_qubits"] = device.num_qubits;
  j["granularity"] = device.granularity;
  j["dt"] = device.dt;
  j["edges"] = json::array();
  for (const auto& e : device.edges) {
    j["edges"].push_back({e.control, e.target});
  }
  return dump(j);
}

Device device_from_json(std::string_view text) {
  return guarded("device.json", [&] {
    const auto j = parse(text);
    Device d;
    d.name = j.value("name", std::string{});
    d.num_qubits = j.at("num_qubits").get<int>();
    d.granularity = j.at("granularity").get<int>();
    d.dt = j.at("dt").get<double>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw Error(ErrorKind::Format, "edge must be [control, target]");
      }
      d.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    d.validate();
    return d;
  });
}

std::string library_to_json(const BasisPulseLibrary& lib) {
  json entries = json::array();
  for (const auto& [key, entry] : lib.entries()) {
    json e;
    e["gate"] = to_string(entry.gate);
    e["qubits"] = entry.qubits;
    e["pulses"] = json::array();
    for (const auto& p : entry.pulses) {
      e["pulses"].push_back(
          {{"channel", channel_json(p.channel)}, {"offset", p.offset}, {"shape", shape_json(p.shape)}});
    }
    if (entry.gate == Gate::I || entry.delay != 0) {
      e["delay"] = entry.delay;
    }
    entries.push_back(std::move(e));
  }
  return dump(json{{"entries", std::move(entries)}});
}

BasisPulseLibrary library_from_json(std::string_view text) {
  return guarded("library.json", [&] {
    const auto j = parse(text);
    BasisPulseLibrary lib;
    for (const auto& e : j.at("entries")) {
      LibraryEntry entry;
      entry.gate = gate_from(e.at("gate"));
      entry.qubits = e.at("qubits").get<std::vector<int>>();
      entry.delay = e.value("delay", 0);
      for (const auto& p : e.value("pulses", json::array())) {
        entry.pulses.push_back(
            {channel_from(p.at("channel")), p.at("offset").get<int>(), shape_from(p.at("shape"))});
      }
      lib.set(std::move(entry));
    }
    return lib;
  });
}

std::string circuit_to_json(const Circuit& circuit) {
  json j;
  j["name"] = circuit.name;
  j["num_qubits"] = circuit.num_qubits;
  j["ops"] = json::array();
  for (const auto& op : circuit.ops) {
    json o{{"gate", to_string(op.gate)}, {"qubits", op.qubits}};
    if (op.gate == Gate::RZ) {
      o["angle"] = op.angle;
    }
    j["ops"].push_back(std::move(o));
  }
  if (circuit.layout) {
    j["layout"] = *circuit.layout;
  }
  return dump(j);
}

Circuit circuit_from_json(std::string_view text) {
  return guarded("circuit.json", [&] {
    const auto j = parse(text);
    Circuit c;
    c.name = j.value("name", std::string{});
    c.num_qubits = j.at("num_qubits").get<int>();
    for (const auto& o : j.at("ops")) {
      GateApp op;
      op.gate = gate_from(o.at("gate"));
      op.qubits = o.at("qubits").get<std::vector<int>>();
      op.angle = o.value("angle", 0.0);
      c.ops.push_back(std::move(op));
    }
    if (j.contains("layout")) {
      c.layout = j.at("layout").get<Layout>();
    }
    c.validate();
    return c;
  });
}

std::string schedule_to_json(const Schedule& schedule) {
  json j;
  j["device"] = schedule.device;
  j["items"] = json::array();
  for (const auto& it : schedule.items) {
    j["items"].push_back({{"channel", channel_json(it.channel)},
                          {"start", it.start},
                          {"shape", shape_json(it.shape)},
                          {"gate_idx", it.gate_index}});
  }
  j["gates"] = json::array();
  for (const auto& g : schedule.gates) {
    j["gates"].push_back({{"gate", to_string(g.gate)},
                          {"qubits", g.qubits},
                          {"start", g.start},
                          {"duration", g.duration}});
  }
  return dump(j);
}

Schedule schedule_from_json(std::string_view text) {
  return guarded("sched.json", [&] {
    const auto j = parse(text);
    Schedule s;
    s.device = j.value("device", std::string{});
    for (const auto& it : j.at("items")) {
      s.items.push_back({channel_from(it.at("channel")), it.at("start").get<int>(),
                         shape_from(it.at("shape")), it.value("gate_idx", 0)});
    }
    for (const auto& g : j.value("gates", json::array())) {
      s.gates.push_back({gate_from(g.at("gate")), g.at("qubits").get<std::vector<int>>(),
                         g.at("start").get<int>(), g.at("duration").get<int>()});
    }
    return s;
  });
}

std::string traces_to_json(const std::map<Channel, PowerTrace>& traces) {
  json j = json::object();
  for (const auto& [ch, t] : traces) {
    j[to_string(ch)] = t.samples;
  }
  return dump(j);
}

std::map<Channel, PowerTrace> traces_from_json(std::string_view text) {
  return guarded("traces.json", [&] {
    const auto j = parse(text);
    if (!j.is_object()) {
      throw Error(ErrorKind::Format, "expected an object keyed by channel");
    }
    std::map<Channel, PowerTrace> out;
    for (const auto& [key, value] : j.items()) {
      const auto ch = parse_channel(key);
      out[ch] = PowerTrace{value.get<std::vector<double>>(), ch};
    }
    return out;
  });
}

std::string recon_to_json(const ReconstructedCircuit& recon) {
  json gates = json::array();
  for (const auto& g : recon.gates) {
    gates.push_back({{"gate", to_string(g.gate)}, {"qubits", g.qubits}, {"start", g.start}});
  }
  return dump(json{{"gates", std::move(gates)}});
}

ReconstructedCircuit recon_from_json(std::string_view text) {
  return guarded("recon.json", [&] {
    const auto j = parse(text);
    ReconstructedCircuit r;
    for (const auto& g : j.at("gates")) {
      r.gates.push_back({gate_from(g.at("gate")), g.at("qubits").get<std::vector<int>>(),
                         g.at("start").get<int>()});
    }
    return r;
  });
}

std::string trace_to_csv(const PowerTrace& trace) {
  std::string out = "index,power\n";
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(trace.samples[i]);
    out += '\n';
  }
  return out;
}

PowerTrace trace_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,power", 0) != 0) {
    throw Error(ErrorKind::Format, "trace.csv must start with 'index,power'");
  }
  PowerTrace t;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError(line_no, "expected 'index,power'");
    }
    try {
      std::size_t used = 0;
      const auto idx = std::stoul(line.substr(0, comma));
      const auto rest = line.substr(comma + 1);
      const double v = std::stod(rest, &used);
      if (idx != t.samples.size() || used != rest.size()) {
        throw ParseError(line_no, "rows must be dense and in order");
      }
      t.samples.push_back(v);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed row '" + line + "'");
    }
  }
  return t;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot read " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::Io, "cannot write " + path.string());
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw Error(ErrorKind::Io, "write failed for " + path.string());
  }
}

} // namespace qsca::io
