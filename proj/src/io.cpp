// Copyright 2026 The renyirate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "renyirate/io.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "renyirate/error.hpp"

namespace renyirate::io {

namespace {

/// Non-blank, comment-stripped lines split on whitespace.
class LineReader {
 public:
  explicit LineReader(std::istream& in) {
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      std::vector<std::string> toks;
      for (std::string t; ss >> t;) toks.push_back(t);
      if (!toks.empty()) lines_.push_back({no, std::move(toks)});
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  const std::vector<std::string>& peek() const { return lines_[pos_].tokens; }
  std::size_t line_no() const { return done() ? lines_.empty() ? 0 : lines_.back().no : lines_[pos_].no; }

  const std::vector<std::string>& next(const char* what) {
    if (done()) fail(ErrorKind::ParseError, std::string("unexpected end of file, expected ") + what);
    return lines_[pos_++].tokens;
  }

  std::vector<double> numbers(std::size_t count, const char* what) {
    std::size_t no = line_no();
    const auto& toks = next(what);
    if (toks.size() != count) {
      fail(ErrorKind::ParseError, "line " + std::to_string(no) + ": " + what + " needs " + std::to_string(count) +
                                      " values, got " + std::to_string(toks.size()));
    }
    std::vector<double> out;
    out.reserve(count);
    for (const auto& t : toks) {
      try {
        out.push_back(parse_double(t));
      } catch (const Error& e) {
        fail(ErrorKind::ParseError, "line " + std::to_string(no) + ": " + e.what());
      }
    }
    return out;
  }

  std::vector<double> rows(std::size_t count, std::size_t width, const char* what) {
    std::vector<double> out;
    out.reserve(count * width);
    for (std::size_t r = 0; r < count; ++r) {
      std::vector<double> row = numbers(width, what);
      out.insert(out.end(), row.begin(), row.end());
    }
    return out;
  }

 private:
  struct Line {
    std::size_t no;
    std::vector<std::string> tokens;
  };
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::size_t parse_count(const std::string& t, const char* what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || v == 0) {
    fail(ErrorKind::ParseError, std::string(what) + " must be a positive integer, got '" + t + "'");
  }
  return v;
}

std::size_t keyword_count(LineReader& r, const char* key) {
  std::size_t no = r.line_no();
  const auto& toks = r.next(key);
  if (toks.size() != 2 || toks[0] != key) {
    fail(ErrorKind::ParseError, "line " + std::to_string(no) + ": expected '" + key + " <n>'");
  }
  return parse_count(toks[1], key);
}

void expect_keyword(LineReader& r, const char* key) {
  std::size_t no = r.line_no();
  const auto& toks = r.next(key);
  if (toks.size() != 1 || toks[0] != key) {
    fail(ErrorKind::ParseError, "line " + std::to_string(no) + ": expected '" + key + "'");
  }
}

bool optional_keyword(LineReader& r, const char* key) {
  if (r.done() || r.peek().size() != 1 || r.peek()[0] != key) return false;
  r.next(key);
  return true;
}

void expect_end(const LineReader& r) {
  if (!r.done()) fail(ErrorKind::ParseError, "line " + std::to_string(r.line_no()) + ": unexpected trailing content");
}

void write_row(std::ostream& out, std::span<const double> row) {
  for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << format_double(row[i]);
  out << '\n';
}

MarkovChain chain_from(LineReader& r, std::size_t k) {
  std::vector<double> rows = r.rows(k, k, "matrix row");
  std::optional<FiniteDistribution> init;
  if (!r.done()) init = FiniteDistribution(r.numbers(k, "initial law"));
  return MarkovChain::from_dense(k, rows, std::move(init));
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view token) {
  std::string_view t = token;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    fail(ErrorKind::ParseError, "not a decimal number: '" + std::string(token) + "'");
  }
  return v;
}

MarkovChain read_chain(std::istream& in) {
  LineReader r(in);
  const auto& head = r.next("state count");
  if (head.size() != 1) fail(ErrorKind::ParseError, "first line must hold the state count");
  std::size_t k = parse_count(head[0], "state count");
  MarkovChain mc = chain_from(r, k);
  expect_end(r);
  return mc;
}

void write_chain(std::ostream& out, const MarkovChain& mc) {
  const std::size_t k = mc.states();
  out << k << '\n';
  std::vector<double> dense = mc.transition().to_dense();
  for (std::size_t i = 0; i < k; ++i) write_row(out, std::span<const double>(dense).subspan(i * k, k));
  write_row(out, mc.initial().probs());
}

ProcessModel read_process(std::istream& in) {
  LineReader r(in);
  const std::size_t a = keyword_count(r, "alphabet");
  std::size_t no = r.line_no();
  const auto& kind = r.next("kind");
  if (kind.size() != 2 || kind[0] != "kind") fail(ErrorKind::ParseError, "line " + std::to_string(no) + ": expected 'kind <iid|markov|hmm>'");
  const std::string k = kind[1];

  if (k == "iid") {
    expect_keyword(r, "marginal");
    ProcessModel p = ProcessModel::iid(FiniteDistribution(r.numbers(a, "marginal")));
    expect_end(r);
    return p;
  }
  if (k == "markov") {
    const std::size_t m = keyword_count(r, "order");
    auto rows = checked_power(a, m, std::size_t{1} << 24);
    if (!rows) fail(ErrorKind::EnumerationTooLarge, "A^m is too large for a transition table");
    expect_keyword(r, "transition");
    std::vector<double> table = r.rows(*rows, a, "transition row");
    std::optional<FiniteDistribution> init;
    if (optional_keyword(r, "initial")) init = FiniteDistribution(r.numbers(*rows, "initial block law"));
    expect_end(r);
    return ProcessModel::markov(a, m, std::move(table), std::move(init));
  }
  if (k == "hmm") {
    const std::size_t h = keyword_count(r, "hidden");
    std::vector<double> hidden = r.rows(h, h, "hidden row");
    std::optional<FiniteDistribution> init;
    if (optional_keyword(r, "hidden_initial")) init = FiniteDistribution(r.numbers(h, "hidden initial law"));
    expect_keyword(r, "emission");
    std::vector<double> emission = r.rows(h, a, "emission row");
    expect_end(r);
    return ProcessModel::hmm(MarkovChain::from_dense(h, hidden, std::move(init)), a, std::move(emission));
  }
  fail(ErrorKind::ParseError, "unknown process kind '" + k + "'");
}

void write_process(std::ostream& out, const ProcessModel& p) {
  const std::size_t a = p.alphabet();
  out << "alphabet " << a << '\n';
  switch (p.kind()) {
    case ProcessKind::Iid:
      out << "kind iid\nmarginal\n";
      write_row(out, p.marginal().probs());
      break;
    case ProcessKind::Markov: {
      out << "kind markov\norder " << p.order() << "\ntransition\n";
      const std::size_t rows = p.table().size() / a;
      for (std::size_t u = 0; u < rows; ++u) write_row(out, p.table().subspan(u * a, a));
      out << "initial\n";
      write_row(out, p.initial_blocks().probs());
      break;
    }
    case ProcessKind::Hmm: {
      const MarkovChain& h = p.hidden();
      const std::size_t k = h.states();
      out << "kind hmm\nhidden " << k << '\n';
      std::vector<double> dense = h.transition().to_dense();
      for (std::size_t i = 0; i < k; ++i) write_row(out, std::span<const double>(dense).subspan(i * k, k));
      out << "hidden_initial\n";
      write_row(out, h.initial().probs());
      out << "emission\n";
      for (std::size_t x = 0; x < k; ++x) write_row(out, p.emission().subspan(x * a, a));
      break;
    }
  }
}

Model read_model(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::istringstream probe(text);
  std::string first;
  for (std::string line; std::getline(probe, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    if (ss >> first) break;
  }
  std::istringstream body(text);
  if (first == "alphabet") return read_process(body);
  return read_chain(body);
}

ProcessModel as_process(const Model& m) {
  if (const auto* p = std::get_if<ProcessModel>(&m)) return *p;
  const MarkovChain& mc = std::get<MarkovChain>(m);
  return ProcessModel::markov(mc.states(), 1, mc.transition().to_dense(), mc.initial());
}

}  // namespace renyirate::io
