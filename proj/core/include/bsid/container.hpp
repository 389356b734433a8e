#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsid/autoencoder.hpp"
#include "bsid/encoding.hpp"
#include "bsid/matrix.hpp"
#include "bsid/network.hpp"

namespace bsid {

// Little-endian binary container shared by every persisted artifact:
//   magic "BSID" | u32 format version | u32 payload kind |
//   u64 payload length | u64 payload fingerprint | payload bytes
// Loads verify, in order: magic, version (VersionError naming both sides),
// length (TruncationError), fingerprint (FingerprintError).
inline constexpr std::uint32_t kContainerVersion = 1;

enum class PayloadKind : std::uint32_t {
    NetworkWeights = 1,
    Model = 2,
    PipelineArtifact = 3,
    FoldState = 4,
};

class ByteWriter {
public:
    void put_u8(std::uint8_t v);
    void put_u32(std::uint32_t v);
    void put_u64(std::uint64_t v);
    void put_f64(double v);
    void put_string(const std::string& s);
    void put_f64_vector(const std::vector<double>& v);
    void put_matrix(const Matrix& m);

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
};

class ByteReader {
public:
    explicit ByteReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::uint8_t get_u8();
    std::uint32_t get_u32();
    std::uint64_t get_u64();
    double get_f64();
    std::string get_string();
    std::vector<double> get_f64_vector();
    Matrix get_matrix();

    bool exhausted() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) const;
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

// Wraps payload bytes in the container envelope / unwraps with checks.
std::vector<std::uint8_t> seal_container(PayloadKind kind, std::vector<std::uint8_t> payload);
std::vector<std::uint8_t> open_container(const std::vector<std::uint8_t>& file_bytes,
                                         PayloadKind expected_kind);

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_file(const std::string& path);

// Payload serializers.
void put_network(ByteWriter& w, const Network& net);
Network get_network(ByteReader& r);
void put_autoencoder(ByteWriter& w, const AutoencoderModel& model);
AutoencoderModel get_autoencoder(ByteReader& r);
void put_encoding_plan(ByteWriter& w, const EncodingPlan& plan);
EncodingPlan get_encoding_plan(ByteReader& r);

// Human-readable weight dump for diffing.
std::string network_to_text(const Network& net);

}  // namespace bsid
