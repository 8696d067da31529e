#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "diplab/field.hpp"
#include "diplab/network.hpp"

namespace diplab {

// Packed most-significant-first into 64-bit words; unused tail bits stay zero.
class BitString {
 public:
  BitString() = default;
  // From a string of '0'/'1'.
  static BitString from_string(std::string_view text);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool operator[](std::size_t i) const { return ((words_[i >> 6] >> (63 - (i & 63))) & 1) != 0; }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (63 - (i & 63)); }
  void push_back(bool bit) { append_word(bit ? 1 : 0, 1); }
  // Appends the low `width` bits of value (width <= 64), high bit first.
  void append_word(std::uint64_t value, unsigned width);
  // Bits [pos, pos+width) as an integer, width <= 64.
  std::uint64_t word_at(std::size_t pos, unsigned width) const;
  void append(const BitString& other);
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

class BitWriter {
 public:
  // Big-endian, exactly `width` bits. Throws EncodingError when value >= 2^width.
  BitWriter& write(Element value, unsigned width);
  BitWriter& write_bit(bool bit);
  BitWriter& append(const BitString& bits);
  const BitString& bits() const { return out_; }
  BitString take() { return std::move(out_); }

 private:
  BitString out_;
};

class BitReader {
 public:
  explicit BitReader(const BitString& in) : in_(in) {}
  // Throws EncodingError past the end.
  Element read(unsigned width);
  bool read_bit() { return read(1) != 0; }
  BitString read_bits(std::size_t count);
  std::size_t remaining() const { return in_.size() - pos_; }
  void expect_end() const;

 private:
  const BitString& in_;
  std::size_t pos_ = 0;
};

enum class FieldKind { id, position, count, element, role, flag };

// Widths shared by every node: all derive from n, the id exponent and p.
struct Encoding {
  unsigned id_bits = 0;
  unsigned position_bits = 0;
  unsigned element_bits = 0;
  Element modulus = 2;

  static Encoding for_network(const NetworkConfig& cfg, const Field& f);
  unsigned width(FieldKind kind) const;
};

// One certificate field: a fixed tuple of typed values, possibly optional.
struct Slot {
  std::vector<FieldKind> kinds;
  bool optional = false;
};
using Schema = std::vector<Slot>;
using SlotValues = boost::container::small_vector<Element, 4>;
using SlotValue = std::optional<SlotValues>;
using Record = std::vector<SlotValue>;

BitString serialize_cert(const Schema& schema, const Record& record, const Encoding& enc);
// Strict inverse: element values must be < p and no bits may remain.
Record parse_cert(const Schema& schema, const BitString& bits, const Encoding& enc);
// Reads one record and leaves the reader after it.
Record read_cert(const Schema& schema, BitReader& reader, const Encoding& enc);
// Field elements present in the record.
std::size_t element_count(const Schema& schema, const Record& record);

inline SlotValue some(SlotValues values) { return SlotValue(std::move(values)); }
inline SlotValue one(Element value) { return SlotValue(SlotValues{value}); }

}  // namespace diplab
