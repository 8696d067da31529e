#include "diplab/bits.hpp"

#include <algorithm>
#include <string>

#include "diplab/errors.hpp"

namespace diplab {

BitString BitString::from_string(std::string_view text) {
  BitString out;
  for (char c : text) {
    if (c != '0' && c != '1') throw InvalidArgument("bit strings contain only 0 and 1");
    out.push_back(c == '1');
  }
  return out;
}

void BitString::append_word(std::uint64_t value, unsigned width) {
  if (width == 0) return;
  const unsigned off = size_ & 63;
  if (off == 0) words_.push_back(0);
  if (width < 64) value &= (std::uint64_t{1} << width) - 1;
  if (off + width <= 64) {
    words_.back() |= value << (64 - off - width);
  } else {
    const unsigned rest = off + width - 64;
    words_.back() |= value >> rest;
    words_.push_back(value << (64 - rest));
  }
  size_ += width;
}

std::uint64_t BitString::word_at(std::size_t pos, unsigned width) const {
  if (width == 0) return 0;
  const std::size_t wi = pos >> 6;
  const unsigned off = pos & 63;
  std::uint64_t hi = words_[wi] << off;
  if (off + width > 64) hi |= words_[wi + 1] >> (64 - off);
  return hi >> (64 - width);
}

void BitString::append(const BitString& other) {
  for (std::size_t pos = 0; pos < other.size_; pos += 64) {
    const auto width = static_cast<unsigned>(std::min<std::size_t>(64, other.size_ - pos));
    append_word(other.word_at(pos, width), width);
  }
}

std::string BitString::to_string() const {
  std::string out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i] ? '1' : '0');
  return out;
}

BitWriter& BitWriter::write(Element value, unsigned width) {
  if (width < 128 && (value >> width) != 0) {
    throw EncodingError("value " + to_string_u128(value) + " does not fit in " +
                        std::to_string(width) + " bits");
  }
  if (width > 64) {
    out_.append_word(static_cast<std::uint64_t>(value >> 64), width - 64);
    out_.append_word(static_cast<std::uint64_t>(value), 64);
  } else {
    out_.append_word(static_cast<std::uint64_t>(value), width);
  }
  return *this;
}

BitWriter& BitWriter::write_bit(bool bit) {
  out_.push_back(bit);
  return *this;
}

BitWriter& BitWriter::append(const BitString& bits) {
  out_.append(bits);
  return *this;
}

Element BitReader::read(unsigned width) {
  if (remaining() < width) throw EncodingError("certificate truncated");
  Element value = 0;
  if (width > 64) {
    value = Element{in_.word_at(pos_, width - 64)} << 64;
    pos_ += width - 64;
    width = 64;
  }
  value |= in_.word_at(pos_, width);
  pos_ += width;
  return value;
}

BitString BitReader::read_bits(std::size_t count) {
  if (remaining() < count) throw EncodingError("certificate truncated");
  BitString out;
  for (std::size_t done = 0; done < count;) {
    const auto width = static_cast<unsigned>(std::min<std::size_t>(64, count - done));
    out.append_word(in_.word_at(pos_, width), width);
    pos_ += width;
    done += width;
  }
  return out;
}

void BitReader::expect_end() const {
  if (remaining() != 0) throw EncodingError("trailing bits in certificate");
}

Encoding Encoding::for_network(const NetworkConfig& cfg, const Field& f) {
  return {bit_width_upto(cfg.max_id_bound()), bit_width_upto(cfg.size()), f.element_bits(),
          f.modulus()};
}

unsigned Encoding::width(FieldKind kind) const {
  switch (kind) {
    case FieldKind::id: return id_bits;
    case FieldKind::position:
    case FieldKind::count: return position_bits;
    case FieldKind::element: return element_bits;
    case FieldKind::role: return 2;
    case FieldKind::flag: return 1;
  }
  return 0;
}

BitString serialize_cert(const Schema& schema, const Record& record, const Encoding& enc) {
  if (record.size() != schema.size()) throw EncodingError("record does not match its schema");
  BitWriter w;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const Slot& slot = schema[i];
    const SlotValue& value = record[i];
    if (slot.optional) {
      w.write_bit(value.has_value());
    } else if (!value) {
      throw EncodingError("required slot " + std::to_string(i) + " is absent");
    }
    if (!value) continue;
    if (value->size() != slot.kinds.size()) {
      throw EncodingError("slot " + std::to_string(i) + " has the wrong arity");
    }
    for (std::size_t k = 0; k < slot.kinds.size(); ++k) {
      if (slot.kinds[k] == FieldKind::element && (*value)[k] >= enc.modulus) {
        throw EncodingError("field element out of range");
      }
      w.write((*value)[k], enc.width(slot.kinds[k]));
    }
  }
  return w.take();
}

Record parse_cert(const Schema& schema, const BitString& bits, const Encoding& enc) {
  BitReader r(bits);
  Record out = read_cert(schema, r, enc);
  r.expect_end();
  return out;
}

Record read_cert(const Schema& schema, BitReader& r, const Encoding& enc) {
  Record out;
  out.reserve(schema.size());
  for (const Slot& slot : schema) {
    if (slot.optional && !r.read_bit()) {
      out.emplace_back();
      continue;
    }
    SlotValues values;
    for (FieldKind kind : slot.kinds) {
      values.push_back(r.read(enc.width(kind)));
      if (kind == FieldKind::element && values.back() >= enc.modulus) {
        throw EncodingError("field element out of range");
      }
    }
    out.emplace_back(std::move(values));
  }
  return out;
}

std::size_t element_count(const Schema& schema, const Record& record) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < schema.size() && i < record.size(); ++i) {
    if (!record[i]) continue;
    for (FieldKind kind : schema[i].kinds) count += kind == FieldKind::element ? 1 : 0;
  }
  return count;
}

}  // namespace diplab
