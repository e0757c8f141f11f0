#include "pointseg/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "pointseg/errors.hpp"
#include "pointseg/utf8.hpp"

namespace pointseg {

namespace {

constexpr char kModelMagic[4] = {'P', 'S', 'E', 'G'};
constexpr char kEngineMagic[4] = {'P', 'S', 'G', 'E'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { raw(&v, sizeof v); }
  void i32(std::int32_t v) { raw(&v, sizeof v); }
  void f64(double v) { raw(&v, sizeof v); }
  void bytes(std::string_view v) { buf_.append(v); }
  void str(std::string_view v) {
    u32(static_cast<std::uint32_t>(v.size()));
    bytes(v);
  }
  std::string take() { return std::move(buf_); }

 private:
  void raw(const void* p, std::size_t n) { buf_.append(static_cast<const char*>(p), n); }
  std::string buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
  std::uint32_t u32() {
    std::uint32_t v;
    std::memcpy(&v, take(4).data(), 4);
    return v;
  }
  std::int32_t i32() {
    std::int32_t v;
    std::memcpy(&v, take(4).data(), 4);
    return v;
  }
  double f64() {
    double v;
    std::memcpy(&v, take(8).data(), 8);
    return v;
  }
  std::string_view bytes(std::size_t n) { return take(n); }
  std::string_view str() { return take(u32()); }
  std::size_t remaining() const { return data_.size() - pos_; }
  // Guards element counts before any count-driven allocation.
  std::size_t count(std::size_t min_element_bytes) {
    const std::uint32_t n = u32();
    if (static_cast<std::uint64_t>(n) * min_element_bytes > remaining()) {
      throw Error(ErrorKind::Truncation, "declared count exceeds remaining bytes");
    }
    return n;
  }
  bool done() const { return pos_ == data_.size(); }
  void expect_done() const {
    if (!done()) throw Error(ErrorKind::InvariantViolation, "trailing bytes after model data");
  }

 private:
  std::string_view take(std::size_t n) {
    if (n > data_.size() - pos_) {
      throw Error(ErrorKind::Truncation, "input ends inside a declared field");
    }
    std::string_view v = data_.substr(pos_, n);
    pos_ += n;
    return v;
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

void write_ngram_table(ByteWriter& out,
                       const std::map<std::u32string, std::vector<std::int32_t>>& table,
                       bool type_side) {
  out.u32(static_cast<std::uint32_t>(table.size()));
  for (const auto& [pattern, weights] : table) {
    if (type_side) {
      std::string codes;
      codes.reserve(pattern.size());
      for (char32_t c : pattern) codes.push_back(static_cast<char>(c));
      out.str(codes);
    } else {
      out.str(utf8::encode(pattern));
    }
    out.u32(static_cast<std::uint32_t>(weights.size()));
    for (std::int32_t w : weights) out.i32(w);
  }
}

std::map<std::u32string, std::vector<std::int32_t>> read_ngram_table(ByteReader& in,
                                                                     bool type_side) {
  std::map<std::u32string, std::vector<std::int32_t>> table;
  // Minimal entry: length prefix + one byte + weight count.
  const std::size_t count = in.count(9);
  std::u32string prev;
  for (std::size_t i = 0; i < count; ++i) {
    const std::string_view raw = in.str();
    std::u32string pattern;
    if (type_side) {
      pattern.reserve(raw.size());
      for (char c : raw) pattern.push_back(static_cast<char32_t>(static_cast<unsigned char>(c)));
    } else {
      pattern = utf8::decode(raw);
    }
    if (i > 0 && !(prev < pattern)) {
      throw Error(ErrorKind::InvariantViolation, "n-gram table is not sorted/unique");
    }
    const std::size_t n_weights = in.count(4);
    std::vector<std::int32_t> weights(n_weights);
    for (auto& w : weights) w = in.i32();
    prev = pattern;
    table.emplace(std::move(pattern), std::move(weights));
  }
  return table;
}

}  // namespace

std::string save_model(const RawModel& model) {
  ByteWriter out;
  out.bytes({kModelMagic, 4});
  out.u32(kFormatVersion);
  out.u32(model.window);
  out.u32(model.max_ngram);
  out.i32(model.bias);
  out.f64(model.quant_scale);
  for (std::uint8_t code : model.type_codes) out.u8(code);
  write_ngram_table(out, model.char_ngrams, false);
  write_ngram_table(out, model.type_ngrams, true);
  out.u32(static_cast<std::uint32_t>(model.dict.size()));
  for (const auto& entry : model.dict) {
    out.str(utf8::encode(entry.word));
    out.i32(entry.weight_left);
    out.i32(entry.weight_inside);
    out.i32(entry.weight_right);
  }
  return out.take();
}

namespace {

RawModel read_model(ByteReader& in) {
  const std::string_view magic = in.bytes(4);
  if (std::memcmp(magic.data(), kModelMagic, 4) != 0) {
    throw Error(ErrorKind::BadMagic, "not a model file");
  }
  const std::uint32_t version = in.u32();
  if (version != kFormatVersion) {
    throw Error(ErrorKind::VersionMismatch,
                "format version " + std::to_string(version) + ", expected " +
                    std::to_string(kFormatVersion));
  }
  RawModel model;
  model.window = in.u32();
  model.max_ngram = in.u32();
  model.bias = in.i32();
  model.quant_scale = in.f64();
  for (auto& code : model.type_codes) code = in.u8();
  model.char_ngrams = read_ngram_table(in, false);
  model.type_ngrams = read_ngram_table(in, true);
  // Minimal entry: length prefix + one byte + three weights.
  const std::size_t n_dict = in.count(17);
  model.dict.reserve(n_dict);
  for (std::size_t i = 0; i < n_dict; ++i) {
    DictEntry entry;
    entry.word = utf8::decode(in.str());
    entry.weight_left = in.i32();
    entry.weight_inside = in.i32();
    entry.weight_right = in.i32();
    model.dict.push_back(std::move(entry));
  }
  model.validate();  // covers dict order/uniqueness and array lengths
  return model;
}

}  // namespace

RawModel load_model(std::string_view bytes) {
  ByteReader in(bytes);
  RawModel model = read_model(in);
  in.expect_done();
  return model;
}

void save_model_file(const RawModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  const std::string bytes = save_model(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

RawModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_model(bytes);
}

std::string save_engine(const CompiledEngine& engine) {
  ByteWriter out;
  out.bytes({kEngineMagic, 4});
  out.u32(kFormatVersion);
  out.u8(engine.config().merge_char_scores ? 1 : 0);
  out.u8(static_cast<std::uint8_t>(engine.config().dict_mode));
  out.u8(engine.config().type_cache ? 1 : 0);
  out.str(save_model(engine.model()));
  return out.take();
}

CompiledEngine load_engine(std::string_view bytes) {
  ByteReader in(bytes);
  const std::string_view magic = in.bytes(4);
  if (std::memcmp(magic.data(), kEngineMagic, 4) != 0) {
    throw Error(ErrorKind::BadMagic, "not an engine file");
  }
  const std::uint32_t version = in.u32();
  if (version != kFormatVersion) {
    throw Error(ErrorKind::VersionMismatch,
                "format version " + std::to_string(version) + ", expected " +
                    std::to_string(kFormatVersion));
  }
  EngineConfig config;
  config.merge_char_scores = in.u8() != 0;
  const std::uint8_t mode = in.u8();
  if (mode > static_cast<std::uint8_t>(DictMode::All)) {
    throw Error(ErrorKind::InvariantViolation, "unknown dictionary mode");
  }
  config.dict_mode = static_cast<DictMode>(mode);
  config.type_cache = in.u8() != 0;
  RawModel model = load_model(in.str());
  in.expect_done();
  return CompiledEngine::compile(std::move(model), config);
}

}  // namespace pointseg
