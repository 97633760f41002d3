#include "rigidity/structure_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace rigidity {

namespace {

constexpr char kMagic[4] = {'R', 'S', 'T', 'R'};
constexpr std::uint8_t kVersion = 1;

void put_u8(std::ostream& out, std::uint8_t v) { out.put(static_cast<char>(v)); }

std::uint8_t get_u8(std::istream& in) {
  int c = in.get();
  if (c < 0) throw std::runtime_error("structure file truncated");
  return static_cast<std::uint8_t>(c);
}

}  // namespace

void write_rstr(std::ostream& out, const Structure& m) {
  out.write(kMagic, 4);
  put_u8(out, kVersion);
  std::uint32_t n = static_cast<std::uint32_t>(m.n());
  for (int b = 0; b < 4; ++b) put_u8(out, static_cast<std::uint8_t>((n >> (8 * b)) & 0xff));
  put_u8(out, static_cast<std::uint8_t>(m.vocab().symbol_count()));
  for (int a : m.vocab().arities) put_u8(out, static_cast<std::uint8_t>(a));
  for (int sym = 0; sym < m.vocab().symbol_count(); ++sym) {
    const BitVec& rel = m.relation(sym);
    std::uint64_t nbytes = (rel.size() + 7) / 8;
    for (std::uint64_t i = 0; i < nbytes; ++i) {
      std::uint8_t byte = 0;
      for (int b = 0; b < 8; ++b) {
        std::uint64_t pos = i * 8 + b;
        if (pos < rel.size() && rel.test(pos)) byte |= static_cast<std::uint8_t>(1u << b);
      }
      put_u8(out, byte);
    }
  }
  if (!out) throw std::runtime_error("structure file write failed");
}

void write_rstr_file(const std::string& path, const Structure& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_rstr(out, m);
}

Structure read_rstr(std::istream& in, StructureClass cls) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not a structure file (bad magic)");
  std::uint8_t version = get_u8(in);
  if (version != kVersion)
    throw std::runtime_error("unsupported structure file version " + std::to_string(version));
  std::uint32_t n = 0;
  for (int b = 0; b < 4; ++b) n |= static_cast<std::uint32_t>(get_u8(in)) << (8 * b);
  if (n < 1 || n > 1'000'000) throw std::runtime_error("implausible universe size in file");
  int nsym = get_u8(in);
  std::vector<int> arities;
  for (int i = 0; i < nsym; ++i) arities.push_back(get_u8(in));
  Vocabulary vocab = Vocabulary::make(std::move(arities), cls);

  SlotLayout lay = SlotLayout::build(vocab, static_cast<int>(n));
  BitVec enc(lay.total_bits());
  for (int sym = 0; sym < vocab.symbol_count(); ++sym) {
    std::uint64_t space = lay.symbols[sym].tuple_space;
    std::uint64_t nbytes = (space + 7) / 8;
    std::uint64_t base = lay.bit_offset[sym];
    for (std::uint64_t i = 0; i < nbytes; ++i) {
      std::uint8_t byte = get_u8(in);
      for (int b = 0; b < 8; ++b) {
        std::uint64_t pos = i * 8 + b;
        if (pos >= space) {
          if (byte & (1u << b)) throw std::runtime_error("padding bits must be zero");
          continue;
        }
        if (byte & (1u << b)) enc.set(base + pos);
      }
    }
  }
  // decode_structure validates class admissibility (inadmissible bits,
  // missing orbit closure) and throws invalid_argument on violations.
  return decode_structure(lay, enc);
}

Structure read_rstr_file(const std::string& path, StructureClass cls) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_rstr(in, cls);
}

}  // namespace rigidity
