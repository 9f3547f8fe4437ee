#include <string>

#include "qbounds/errors.hpp"
#include "qbounds/graph.hpp"

namespace qbounds {

namespace {

constexpr int kBias = 63;
constexpr int kMaxShortOrder = 62;
constexpr std::string_view kHeader = ">>graph6<<";

}  // namespace

Graph parse_graph6(std::string_view text) {
  std::size_t offset = 0;
  if (text.substr(0, kHeader.size()) == kHeader) offset = kHeader.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
    text.remove_suffix(1);
  }
  if (offset >= text.size()) throw ParseError("graph6: empty input", offset);

  for (std::size_t i = offset; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < kBias || c > 126) throw ParseError("graph6: non-printable or out-of-range character", i);
  }
  const int n = text[offset] - kBias;
  if (n > kMaxShortOrder) throw ParseError("graph6: long-form header is not supported", offset);

  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t want = (bits + 5) / 6;
  const std::size_t have = text.size() - offset - 1;
  if (have < want) throw ParseError("graph6: short bit payload", text.size());
  if (have > want) throw ParseError("graph6: trailing bytes after payload", offset + 1 + want);

  std::vector<Edge> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int chunk = text[offset + 1 + k / 6] - kBias;
      if (chunk & (1 << (5 - static_cast<int>(k % 6)))) edges.emplace_back(i, j);
    }
  }
  // Padding bits must be zero.
  if (bits % 6 != 0) {
    const int last = text[offset + want] - kBias;
    if (last & ((1 << (6 - static_cast<int>(bits % 6))) - 1)) {
      throw ParseError("graph6: nonzero padding bits", offset + want);
    }
  }
  return Graph(n, std::move(edges));
}

std::string to_graph6(const Graph& g) {
  const int n = g.order();
  if (n > kMaxShortOrder) throw UnsupportedError("graph6: order " + std::to_string(n) + " exceeds short form (62)");
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::vector<int> chunks((bits + 5) / 6, 0);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      if (g.adjacent(i, j)) chunks[k / 6] |= 1 << (5 - static_cast<int>(k % 6));
    }
  }
  std::string out(1, static_cast<char>(n + kBias));
  for (int c : chunks) out += static_cast<char>(c + kBias);
  return out;
}

}  // namespace qbounds
