#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "portrisk/ports.hpp"

namespace portrisk {

struct AisMessage {
    std::uint32_t mmsi = 0;
    std::int64_t timestamp = 0;  // seconds since epoch, UTC
    double lat = 0.0;            // [-90, 90]
    double lon = 0.0;            // [-180, 180)
    double sog = 0.0;            // knots, < 102.3
    double cog = 0.0;            // [0, 360); unavailable (3600 raw) maps to 0
};

struct PortCall {
    std::uint32_t mmsi = 0;
    std::string port_id;
    std::int64_t arrival = 0;
    std::int64_t departure = 0;
    double dwell_hours = 0.0;
};

struct Voyage {
    std::uint32_t mmsi = 0;
    std::string origin;
    std::string destination;
    std::int64_t depart = 0;
    std::int64_t arrive = 0;
    int month_index = 0;  // year*12 + month of arrival
};

struct CallParams {
    double radius_km = 10.0;
    double sog_max_knots = 1.0;
    double min_dwell_hours = 2.0;
    double gap_split_hours = 6.0;

    void validate() const;
};

// ---- NMEA 0183 / AIVDM wire layer ----

struct NmeaFragment {
    int fragment_count = 1;
    int fragment_index = 1;
    std::string message_id;  // empty for single-fragment sentences
    char channel = ' ';
    std::string payload;     // armored six-bit ASCII
    int fill_bits = 0;
    // receive time from an optional NMEA 4.10 TAG block prefix (\c:...\)
    std::optional<std::int64_t> tag_timestamp;
};

// Validates '!AIVDM'/'!AIVDO', field structure, fragment bookkeeping,
// payload characters, fill bits and the XOR checksum. Throws
// ChecksumError / UnsupportedSentenceError / ParseError.
NmeaFragment decode_nmea_line(const std::string& line);

std::uint8_t nmea_checksum(std::string_view span);

// De-armored AIS payload bits, MSB first.
class BitBuffer {
public:
    BitBuffer() = default;
    // throws ParseError on characters outside the six-bit alphabet
    BitBuffer(const std::string& armored_payload, int fill_bits);

    std::size_t size() const { return bit_count_; }
    std::uint32_t ubits(std::size_t start, std::size_t len) const;
    std::int32_t sbits(std::size_t start, std::size_t len) const;

    // inverse armoring (fill bits restored as zeros); round-trips byte-exactly
    std::string rearmor(int fill_bits) const;

    void append(const BitBuffer& other);

private:
    std::vector<std::uint8_t> sixbit_;  // one 6-bit group per payload char
    std::size_t bit_count_ = 0;
};

// Multi-fragment reassembly, keyed by (message id, channel) within one
// input stream; confined to a single reader.
class AivdmAssembler {
public:
    // returns the complete message bits once the last fragment arrives
    std::optional<BitBuffer> feed(const NmeaFragment& fragment);
    std::size_t pending() const { return pending_.size(); }

private:
    struct Partial {
        int expected = 0;
        int next_index = 1;
        BitBuffer bits;
        std::optional<std::int64_t> tag_timestamp;
    };
    std::map<std::pair<std::string, char>, Partial> pending_;

public:
    // tag timestamp of the completed message (first fragment wins)
    std::optional<std::int64_t> last_timestamp;
};

// Decoded position report, with raw field integers kept for bit-exact
// verification against the reference decoder.
struct PositionDecode {
    enum class Status { kPosition, kSkippedType, kDroppedSentinel };
    Status status = Status::kSkippedType;
    int message_type = 0;
    AisMessage message{};
    std::uint32_t mmsi = 0;
    std::int32_t lat_raw = 0;   // 1/600000 degree
    std::int32_t lon_raw = 0;   // 1/600000 degree
    int sog_raw = 0;            // 0.1 knot
    int cog_raw = 0;            // 0.1 degree
};

// Types 1/2/3/18 produce positions; 4/5 and everything else are skipped.
// Sentinel "unavailable" lat/lon/sog values are dropped, not errors.
PositionDecode decode_position_report(const BitBuffer& bits, std::int64_t timestamp = 0);

struct IngestStats {
    std::size_t lines = 0;
    std::size_t positions = 0;
    std::size_t skipped_type = 0;
    std::size_t dropped_sentinel = 0;
    std::size_t checksum_errors = 0;
    std::size_t parse_errors = 0;
    std::size_t unsupported = 0;
    std::size_t incomplete_fragments = 0;
};

// Raw feed: one sentence per line, optional TAG block timestamps.
// Undecodable lines are counted and skipped, never fatal.
std::vector<AisMessage> read_nmea_file(const std::string& path, IngestStats& stats);

// Decoded alternative: mmsi,timestamp,lat,lon,sog,cog with ISO-8601 or
// epoch-second timestamps. Sentinel rows are dropped and counted.
std::vector<AisMessage> read_decoded_csv(const std::string& path, IngestStats& stats);

// ---- trajectory layer ----

// Per-vessel tracks, time-sorted (stable for equal timestamps).
std::map<std::uint32_t, std::vector<AisMessage>> build_tracks(std::vector<AisMessage> messages);

// Splits a track at gaps > gap_split_hours, then turns maximal slow
// near-port runs spanning >= min_dwell_hours into port calls. The port is
// the nearest one within radius at the run midpoint; ties break
// lexicographically.
std::vector<PortCall> detect_port_calls(const std::vector<AisMessage>& track,
                                        const PortRegistry& ports,
                                        const CallParams& params);

// Consecutive calls at distinct ports become voyages; repeated calls at
// the same port merge, so no self-loops are produced.
std::vector<Voyage> extract_voyages(const std::vector<PortCall>& calls);

void write_voyages_csv(const std::string& path, const std::vector<Voyage>& voyages,
                       const std::vector<std::string>& comments = {});
std::vector<Voyage> read_voyages_csv(const std::string& path);

}  // namespace portrisk
