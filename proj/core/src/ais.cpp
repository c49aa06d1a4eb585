#include "portrisk/ais.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "portrisk/csv.hpp"
#include "portrisk/errors.hpp"
#include "portrisk/geo.hpp"
#include "portrisk/timeutil.hpp"

namespace portrisk {

void CallParams::validate() const {
    if (!(radius_km > 0.0)) throw ConfigError("radius_km must be > 0");
    if (!(sog_max_knots > 0.0)) throw ConfigError("sog_max_knots must be > 0");
    if (!(min_dwell_hours > 0.0)) throw ConfigError("min_dwell_hours must be > 0");
    if (!(gap_split_hours > 0.0)) throw ConfigError("gap_split_hours must be > 0");
}

std::uint8_t nmea_checksum(std::string_view span) {
    std::uint8_t cs = 0;
    for (char c : span) cs ^= static_cast<std::uint8_t>(c);
    return cs;
}

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

int parse_small_int(const std::string& s, const char* what) {
    if (s.empty() || s.size() > 4) throw ParseError(std::string("bad ") + what + ": '" + s + "'");
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw ParseError(std::string("bad ") + what + ": '" + s + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

// strips an NMEA 4.10 TAG block ("\c:epoch,...*hh\") and pulls the c: time
std::string strip_tag_block(const std::string& line, std::optional<std::int64_t>& ts) {
    if (line.empty() || line[0] != '\\') return line;
    const std::size_t end = line.find('\\', 1);
    if (end == std::string::npos) throw ParseError("unterminated TAG block");
    std::string block = line.substr(1, end - 1);
    const std::size_t star = block.rfind('*');
    if (star != std::string::npos) block = block.substr(0, star);
    std::size_t pos = 0;
    while (pos < block.size()) {
        std::size_t next = block.find(',', pos);
        if (next == std::string::npos) next = block.size();
        const std::string field = block.substr(pos, next - pos);
        if (field.size() > 2 && field[0] == 'c' && field[1] == ':') {
            std::int64_t v = 0;
            const char* b = field.data() + 2;
            const char* e = field.data() + field.size();
            auto [p, ec] = std::from_chars(b, e, v);
            if (ec == std::errc() && p == e) {
                // c: may carry seconds or milliseconds
                ts = v > 40000000000LL ? v / 1000 : v;
            }
        }
        pos = next + 1;
    }
    return line.substr(end + 1);
}

}  // namespace

NmeaFragment decode_nmea_line(const std::string& raw_line) {
    std::string line = raw_line;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();

    std::optional<std::int64_t> tag_ts;
    line = strip_tag_block(line, tag_ts);

    if (line.empty()) throw ParseError("empty sentence");
    if (line[0] == '$') throw UnsupportedSentenceError("not an encapsulated sentence: " + line.substr(0, 6));
    if (line[0] != '!') throw ParseError("sentence must start with '!'");

    const std::size_t star = line.rfind('*');
    if (star == std::string::npos || star + 3 != line.size())
        throw ParseError("missing checksum delimiter");
    const int hi = hex_value(line[star + 1]);
    const int lo = hex_value(line[star + 2]);
    if (hi < 0 || lo < 0) throw ParseError("non-hex checksum");

    const std::uint8_t want = static_cast<std::uint8_t>(hi * 16 + lo);
    const std::uint8_t got = nmea_checksum(std::string_view(line).substr(1, star - 1));
    if (want != got) throw ChecksumError("checksum mismatch in: " + line);

    const std::string body = line.substr(1, star - 1);
    std::vector<std::string> fields = split_csv_line(body);
    if (fields.size() != 7)
        throw ParseError("expected 7 fields, got " + std::to_string(fields.size()));
    if (fields[0] != "AIVDM" && fields[0] != "AIVDO")
        throw UnsupportedSentenceError("unsupported talker/sentence: " + fields[0]);

    NmeaFragment frag;
    frag.fragment_count = parse_small_int(fields[1], "fragment count");
    frag.fragment_index = parse_small_int(fields[2], "fragment index");
    if (frag.fragment_count < 1 || frag.fragment_count > 9 ||
        frag.fragment_index < 1 || frag.fragment_index > frag.fragment_count)
        throw ParseError("bad fragment numbering " + fields[2] + "/" + fields[1]);
    frag.message_id = fields[3];
    if (frag.fragment_count > 1 && frag.message_id.empty())
        throw ParseError("multi-fragment sentence without message id");
    if (fields[4].size() > 1) throw ParseError("bad channel field: " + fields[4]);
    frag.channel = fields[4].empty() ? ' ' : fields[4][0];
    frag.payload = fields[5];
    if (frag.payload.empty()) throw ParseError("empty payload");
    frag.fill_bits = parse_small_int(fields[6], "fill bits");
    if (frag.fill_bits > 5) throw ParseError("fill bits out of range");
    frag.tag_timestamp = tag_ts;

    // validate armoring now so reassembly never sees bad characters
    (void)BitBuffer(frag.payload, frag.fill_bits);
    return frag;
}

BitBuffer::BitBuffer(const std::string& armored_payload, int fill_bits) {
    sixbit_.reserve(armored_payload.size());
    for (char c : armored_payload) {
        const int v = static_cast<unsigned char>(c);
        int six;
        if (v >= 48 && v < 88) six = v - 48;        // '0'..'W' -> 0..39
        else if (v >= 96 && v < 120) six = v - 56;  // '`'..'w' -> 40..63
        else throw ParseError(std::string("invalid six-bit character '") + c + "'");
        sixbit_.push_back(static_cast<std::uint8_t>(six));
    }
    if (fill_bits < 0 || fill_bits > 5 ||
        static_cast<std::size_t>(fill_bits) >= sixbit_.size() * 6)
        throw ParseError("fill bits out of range");
    bit_count_ = sixbit_.size() * 6 - static_cast<std::size_t>(fill_bits);
}

std::uint32_t BitBuffer::ubits(std::size_t start, std::size_t len) const {
    if (len > 32 || start + len > bit_count_)
        throw ParseError("bit range " + std::to_string(start) + "+" + std::to_string(len) +
                         " exceeds payload of " + std::to_string(bit_count_) + " bits");
    std::uint32_t out = 0;
    for (std::size_t i = start; i < start + len; ++i) {
        const std::uint8_t group = sixbit_[i / 6];
        const int bit = (group >> (5 - i % 6)) & 1;
        out = (out << 1) | static_cast<std::uint32_t>(bit);
    }
    return out;
}

std::int32_t BitBuffer::sbits(std::size_t start, std::size_t len) const {
    std::uint32_t raw = ubits(start, len);
    if (len < 32 && (raw & (1u << (len - 1))))
        raw |= ~((1u << len) - 1);  // sign extend
    return static_cast<std::int32_t>(raw);
}

std::string BitBuffer::rearmor(int fill_bits) const {
    (void)fill_bits;
    std::string out;
    out.reserve(sixbit_.size());
    for (std::uint8_t six : sixbit_) {
        int v = six < 40 ? six + 48 : six + 56;
        out.push_back(static_cast<char>(v));
    }
    return out;
}

void BitBuffer::append(const BitBuffer& other) {
    if (bit_count_ != sixbit_.size() * 6)
        throw ParseError("cannot append after a fragment with fill bits");
    sixbit_.insert(sixbit_.end(), other.sixbit_.begin(), other.sixbit_.end());
    bit_count_ += other.bit_count_;
}

std::optional<BitBuffer> AivdmAssembler::feed(const NmeaFragment& fragment) {
    BitBuffer bits(fragment.payload, fragment.fill_bits);
    if (fragment.fragment_count == 1) {
        last_timestamp = fragment.tag_timestamp;
        return bits;
    }

    const auto key = std::make_pair(fragment.message_id, fragment.channel);
    if (fragment.fragment_index == 1) {
        Partial p;
        p.expected = fragment.fragment_count;
        p.next_index = 2;
        p.bits = std::move(bits);
        p.tag_timestamp = fragment.tag_timestamp;
        pending_[key] = std::move(p);  // restart overwrites a stale partial
        return std::nullopt;
    }

    auto it = pending_.find(key);
    if (it == pending_.end())
        throw ParseError("fragment " + std::to_string(fragment.fragment_index) +
                         " of message '" + fragment.message_id + "' arrived without start");
    Partial& p = it->second;
    if (fragment.fragment_index != p.next_index || fragment.fragment_count != p.expected) {
        pending_.erase(it);
        throw ParseError("out-of-order fragment for message '" + fragment.message_id + "'");
    }
    p.bits.append(bits);
    ++p.next_index;
    if (fragment.fragment_index == p.expected) {
        BitBuffer done = std::move(p.bits);
        last_timestamp = p.tag_timestamp;
        pending_.erase(it);
        return done;
    }
    return std::nullopt;
}

PositionDecode decode_position_report(const BitBuffer& bits, std::int64_t timestamp) {
    if (bits.size() < 38) throw ParseError("payload too short for a message header");
    PositionDecode out;
    out.message_type = static_cast<int>(bits.ubits(0, 6));
    out.mmsi = bits.ubits(8, 30);

    std::size_t sog_at, lon_at;
    switch (out.message_type) {
        case 1:
        case 2:
        case 3:
            sog_at = 50;
            lon_at = 61;
            break;
        case 18:
            sog_at = 46;
            lon_at = 57;
            break;
        default:
            out.status = PositionDecode::Status::kSkippedType;
            return out;
    }
    if (bits.size() < 168)
        throw ParseError("type " + std::to_string(out.message_type) + " payload truncated: " +
                         std::to_string(bits.size()) + " bits");

    out.sog_raw = static_cast<int>(bits.ubits(sog_at, 10));
    out.lon_raw = bits.sbits(lon_at, 28);
    out.lat_raw = bits.sbits(lon_at + 28, 27);
    out.cog_raw = static_cast<int>(bits.ubits(lon_at + 28 + 27 + 1, 12));

    // unavailable-value sentinels per ITU-R M.1371
    if (out.sog_raw == 1023 || out.lat_raw == 91 * 600000 || out.lon_raw == 181 * 600000) {
        out.status = PositionDecode::Status::kDroppedSentinel;
        return out;
    }

    AisMessage m;
    m.mmsi = out.mmsi;
    m.timestamp = timestamp;
    m.lat = out.lat_raw / 600000.0;
    m.lon = out.lon_raw / 600000.0;
    m.sog = out.sog_raw / 10.0;
    m.cog = out.cog_raw == 3600 ? 0.0 : out.cog_raw / 10.0;
    if (m.lat < -90.0 || m.lat > 90.0 || m.lon < -180.0 || m.lon >= 180.0 || m.cog >= 360.0) {
        out.status = PositionDecode::Status::kDroppedSentinel;
        return out;
    }
    out.message = m;
    out.status = PositionDecode::Status::kPosition;
    return out;
}

std::vector<AisMessage> read_nmea_file(const std::string& path, IngestStats& stats) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open NMEA file: " + path);

    std::vector<AisMessage> out;
    AivdmAssembler assembler;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++stats.lines;
        try {
            const NmeaFragment frag = decode_nmea_line(line);
            auto bits = assembler.feed(frag);
            if (!bits) continue;
            const std::int64_t ts = assembler.last_timestamp.value_or(0);
            const PositionDecode pd = decode_position_report(*bits, ts);
            switch (pd.status) {
                case PositionDecode::Status::kPosition:
                    out.push_back(pd.message);
                    ++stats.positions;
                    break;
                case PositionDecode::Status::kSkippedType:
                    ++stats.skipped_type;
                    break;
                case PositionDecode::Status::kDroppedSentinel:
                    ++stats.dropped_sentinel;
                    break;
            }
        } catch (const ChecksumError&) {
            ++stats.checksum_errors;
        } catch (const UnsupportedSentenceError&) {
            ++stats.unsupported;
        } catch (const ParseError&) {
            ++stats.parse_errors;
        }
    }
    stats.incomplete_fragments += assembler.pending();
    return out;
}

std::vector<AisMessage> read_decoded_csv(const std::string& path, IngestStats& stats) {
    const CsvTable t = read_csv(path);
    const std::size_t c_mmsi = t.col("mmsi");
    const std::size_t c_ts = t.col("timestamp");
    const std::size_t c_lat = t.col("lat");
    const std::size_t c_lon = t.col("lon");
    const std::size_t c_sog = t.col("sog");
    const std::size_t c_cog = t.col("cog");

    auto num = [&](const std::string& s, const char* what) {
        double v = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw ParseError(path + ": bad " + what + " value '" + s + "'");
        return v;
    };

    std::vector<AisMessage> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        ++stats.lines;
        AisMessage m;
        {
            unsigned long mm = 0;
            const std::string& s = r[c_mmsi];
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), mm);
            if (ec != std::errc() || p != s.data() + s.size() || mm > 999999999ul)
                throw ParseError(path + ": bad mmsi '" + s + "'");
            m.mmsi = static_cast<std::uint32_t>(mm);
        }
        m.timestamp = parse_timestamp(r[c_ts]);
        m.lat = num(r[c_lat], "lat");
        m.lon = num(r[c_lon], "lon");
        m.sog = num(r[c_sog], "sog");
        m.cog = num(r[c_cog], "cog");

        // same sentinel policy as the wire decoder
        if (m.lat == 91.0 || m.lon == 181.0 || m.sog == 102.3) {
            ++stats.dropped_sentinel;
            continue;
        }
        if (m.cog == 360.0) m.cog = 0.0;
        if (m.lat < -90.0 || m.lat > 90.0)
            throw ParseError(path + ": lat out of range: " + r[c_lat]);
        if (m.lon < -180.0 || m.lon >= 180.0)
            throw ParseError(path + ": lon out of range: " + r[c_lon]);
        if (m.sog < 0.0 || m.sog >= 102.3)
            throw ParseError(path + ": sog out of range: " + r[c_sog]);
        if (m.cog < 0.0 || m.cog >= 360.0)
            throw ParseError(path + ": cog out of range: " + r[c_cog]);
        out.push_back(m);
        ++stats.positions;
    }
    return out;
}

std::map<std::uint32_t, std::vector<AisMessage>> build_tracks(std::vector<AisMessage> messages) {
    std::map<std::uint32_t, std::vector<AisMessage>> tracks;
    for (auto& m : messages) tracks[m.mmsi].push_back(m);
    for (auto& [mmsi, track] : tracks) {
        (void)mmsi;
        std::stable_sort(track.begin(), track.end(),
                         [](const AisMessage& a, const AisMessage& b) {
                             return a.timestamp < b.timestamp;
                         });
    }
    return tracks;
}

std::vector<PortCall> detect_port_calls(const std::vector<AisMessage>& track,
                                        const PortRegistry& ports,
                                        const CallParams& params) {
    params.validate();
    std::vector<PortCall> calls;
    if (track.empty()) return calls;

    for (std::size_t i = 1; i < track.size(); ++i) {
        if (track[i].timestamp < track[i - 1].timestamp)
            throw OrderingError("track not sorted by timestamp at index " + std::to_string(i));
        if (track[i].mmsi != track[0].mmsi)
            throw OrderingError("track mixes vessels: " + std::to_string(track[i].mmsi) +
                                " vs " + std::to_string(track[0].mmsi));
    }

    // nearest port within radius per message; -1 when in open water or fast
    struct Candidate {
        int port = -1;
        double dist = 0.0;
    };
    std::vector<Candidate> near(track.size());
    for (std::size_t i = 0; i < track.size(); ++i) {
        if (track[i].sog > params.sog_max_knots) continue;
        int best = -1;
        double best_dist = 0.0;
        for (std::size_t p = 0; p < ports.size(); ++p) {
            const auto& port = ports.at(p);
            const double d = haversine_km(track[i].lat, track[i].lon,
                                          port.latitude, port.longitude);
            if (d > params.radius_km) continue;
            const bool better =
                best < 0 || d < best_dist ||
                (d == best_dist &&
                 port.port_id < ports.at(static_cast<std::size_t>(best)).port_id);
            if (better) {
                best = static_cast<int>(p);
                best_dist = d;
            }
        }
        near[i].port = best;
        near[i].dist = best_dist;
    }

    const double gap_seconds = params.gap_split_hours * 3600.0;
    const double dwell_seconds = params.min_dwell_hours * 3600.0;

    std::size_t seg_start = 0;
    auto flush_segment = [&](std::size_t lo, std::size_t hi) {  // [lo, hi)
        std::size_t run_start = lo;
        while (run_start < hi) {
            if (near[run_start].port < 0) {
                ++run_start;
                continue;
            }
            std::size_t run_end = run_start;
            while (run_end + 1 < hi && near[run_end + 1].port >= 0) ++run_end;

            const std::int64_t arr = track[run_start].timestamp;
            const std::int64_t dep = track[run_end].timestamp;
            if (static_cast<double>(dep - arr) >= dwell_seconds) {
                const std::size_t mid = run_start + (run_end - run_start) / 2;
                PortCall call;
                call.mmsi = track[0].mmsi;
                call.port_id = ports.at(static_cast<std::size_t>(near[mid].port)).port_id;
                call.arrival = arr;
                call.departure = dep;
                call.dwell_hours = static_cast<double>(dep - arr) / 3600.0;
                calls.push_back(std::move(call));
            }
            run_start = run_end + 1;
        }
    };

    for (std::size_t i = 1; i < track.size(); ++i) {
        if (static_cast<double>(track[i].timestamp - track[i - 1].timestamp) > gap_seconds) {
            flush_segment(seg_start, i);
            seg_start = i;
        }
    }
    flush_segment(seg_start, track.size());
    return calls;
}

std::vector<Voyage> extract_voyages(const std::vector<PortCall>& calls) {
    std::vector<Voyage> voyages;
    if (calls.empty()) return voyages;

    // merge consecutive same-port calls (berth re-detections)
    std::vector<PortCall> merged;
    for (const auto& c : calls) {
        if (!merged.empty()) {
            const PortCall& prev = merged.back();
            if (c.arrival < prev.arrival)
                throw OrderingError("port calls not sorted by arrival");
            if (c.arrival < prev.departure)
                throw DataIntegrityError("overlapping port calls at " + prev.port_id +
                                         " and " + c.port_id);
        }
        if (!merged.empty() && merged.back().port_id == c.port_id) {
            merged.back().departure = c.departure;
            merged.back().dwell_hours =
                static_cast<double>(merged.back().departure - merged.back().arrival) / 3600.0;
        } else {
            merged.push_back(c);
        }
    }

    for (std::size_t i = 1; i < merged.size(); ++i) {
        Voyage v;
        v.mmsi = merged[i].mmsi;
        v.origin = merged[i - 1].port_id;
        v.destination = merged[i].port_id;
        v.depart = merged[i - 1].departure;
        v.arrive = merged[i].arrival;
        v.month_index = month_index_of(v.arrive);
        voyages.push_back(std::move(v));
    }
    return voyages;
}

void write_voyages_csv(const std::string& path, const std::vector<Voyage>& voyages,
                       const std::vector<std::string>& comments) {
    CsvWriter w(path, {"mmsi", "origin", "destination", "depart", "arrive"}, comments);
    for (const auto& v : voyages)
        w.row({std::to_string(v.mmsi), v.origin, v.destination,
               std::to_string(v.depart), std::to_string(v.arrive)});
    w.finish();
}

std::vector<Voyage> read_voyages_csv(const std::string& path) {
    const CsvTable t = read_csv(path);
    const std::size_t c_mmsi = t.col("mmsi");
    const std::size_t c_o = t.col("origin");
    const std::size_t c_d = t.col("destination");
    const std::size_t c_dep = t.col("depart");
    const std::size_t c_arr = t.col("arrive");
    std::vector<Voyage> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        Voyage v;
        v.mmsi = static_cast<std::uint32_t>(std::stoul(r[c_mmsi]));
        v.origin = r[c_o];
        v.destination = r[c_d];
        v.depart = parse_timestamp(r[c_dep]);
        v.arrive = parse_timestamp(r[c_arr]);
        if (v.origin == v.destination)
            throw DataIntegrityError(path + ": self-loop voyage at " + v.origin);
        if (v.arrive <= v.depart)
            throw DataIntegrityError(path + ": voyage arrives before departing");
        v.month_index = month_index_of(v.arrive);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace portrisk
