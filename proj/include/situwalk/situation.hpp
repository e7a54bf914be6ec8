#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "situwalk/errors.hpp"
#include "situwalk/items.hpp"
#include "situwalk/text.hpp"

namespace situwalk {

struct GeoPoint {
    double lat;
    double lon;

    GeoPoint(double lat_deg, double lon_deg) : lat(lat_deg), lon(lon_deg) {
        if (!(lat >= -90.0 && lat <= 90.0)) throw DomainError("latitude out of [-90,90]");
        if (!(lon >= -180.0 && lon <= 180.0)) throw DomainError("longitude out of [-180,180]");
    }
};

/// Great-circle distance in meters (haversine, mean Earth radius).
inline double haversine_m(const GeoPoint& a, const GeoPoint& b) {
    constexpr double kEarthRadiusM = 6371000.0;
    constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
    const double phi1 = a.lat * kDegToRad, phi2 = b.lat * kDegToRad;
    const double dphi = (b.lat - a.lat) * kDegToRad;
    const double dlam = (b.lon - a.lon) * kDegToRad;
    const double s = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) * std::sin(dlam / 2) * std::sin(dlam / 2);
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(s)));
}

struct CivilTime {
    int year;
    int month;
    int day;
    int hour;
    int minute;

    CivilTime(int y, int mo, int d, int h, int mi)
        : year(y), month(mo), day(d), hour(h), minute(mi) {
        if (month < 1 || month > 12) throw DomainError("month out of 1-12");
        if (day < 1 || day > days_in_month(year, month)) throw DomainError("invalid day of month");
        if (hour < 0 || hour > 23) throw DomainError("hour out of 0-23");
        if (minute < 0 || minute > 59) throw DomainError("minute out of 0-59");
    }

    static bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }
    static int days_in_month(int y, int m) {
        static constexpr int len[13] = {0, 31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        return m == 2 && leap(y) ? 29 : len[m];
    }

    /// Accepts `YYYY-MM-DDTHH:MM[:SS]` (or a space instead of 'T'); seconds
    /// are validated and dropped.
    static CivilTime parse(const std::string& text);
};

inline CivilTime CivilTime::parse(const std::string& text) {
    const std::string s = trim(text);
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    char sep = 0;
    int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &sec);
    if (n < 6 || (sep != 'T' && sep != ' '))
        throw ParseError("bad timestamp (want YYYY-MM-DDTHH:MM[:SS]): " + text);
    if (n == 7 && (sec < 0 || sec > 59)) throw ParseError("bad seconds in timestamp: " + text);
    try {
        return {y, mo, d, h, mi};
    } catch (const DomainError& e) {
        throw ParseError(std::string(e.what()) + ": " + text);
    }
}

enum class Season { Spring, Summer, Autumn, Winter };
enum class DayPart { Morning, Midday, Evening };

inline std::string_view season_token(Season s) {
    switch (s) {
        case Season::Spring: return "printemps";
        case Season::Summer: return "été";
        case Season::Autumn: return "automne";
        case Season::Winter: return "hiver";
    }
    return "?";
}

inline std::string_view day_part_token(DayPart d) {
    switch (d) {
        case DayPart::Morning: return "matin";
        case DayPart::Midday: return "midi";
        case DayPart::Evening: return "soir";
    }
    return "?";
}

/// Meteorological seasons: Dec-Feb winter, Mar-May spring, Jun-Aug summer,
/// Sep-Nov autumn.
inline Season season_of(const CivilTime& t) {
    switch (t.month) {
        case 12:
        case 1:
        case 2: return Season::Winter;
        case 3:
        case 4:
        case 5: return Season::Spring;
        case 6:
        case 7:
        case 8: return Season::Summer;
        default: return Season::Autumn;
    }
}

/// Day parts: morning [04:00,12:00), midday [12:00,17:00), evening otherwise.
inline DayPart day_part_of(const CivilTime& t) {
    if (t.hour >= 4 && t.hour < 12) return DayPart::Morning;
    if (t.hour >= 12 && t.hour < 17) return DayPart::Midday;
    return DayPart::Evening;
}

/// The three-dimension semantic situation: where (as a location type), which
/// season, which part of the day.
struct Situation {
    std::string location_type;
    Season season;
    DayPart day_part;

    Situation(std::string location, Season s, DayPart d)
        : location_type(normalize_token(location)), season(s), day_part(d) {
        if (location_type.empty()) throw DomainError("empty location type");
    }

    /// The situation as an itemset over the three non-class dimensions.
    Itemset as_itemset() const {
        return make_itemset({Item{Dimension::LocationType, location_type},
                             Item{Dimension::Season, std::string(season_token(season))},
                             Item{Dimension::DayPart, std::string(day_part_token(day_part))}});
    }

    std::string str() const {
        return "(" + location_type + "," + std::string(season_token(season)) + "," +
               std::string(day_part_token(day_part)) + ")";
    }

    friend bool operator==(const Situation&, const Situation&) = default;
};

/// Flat list of typed circles standing in for reverse geocoding: a point maps
/// to the type of the nearest containing circle.
class Gazetteer {
public:
    struct Entry {
        GeoPoint center;
        double radius_m;
        std::string location_type;
    };

    void add(GeoPoint center, double radius_m, std::string_view type) {
        if (!(radius_m > 0)) throw DomainError("gazetteer radius must be positive");
        std::string tok = normalize_token(type);
        if (tok.empty()) throw DomainError("empty gazetteer location type");
        entries_.push_back({center, radius_m, std::move(tok)});
    }

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

private:
    std::vector<Entry> entries_;
};

/// Gazetteer file: TSV `lat  lon  radius_m  location_type`, '#' comments.
inline Gazetteer load_gazetteer(const std::string& path) {
    Gazetteer gz;
    for (const auto& row : read_tsv(path)) {
        if (row.fields.size() != 4)
            throw ParseError("expected 4 columns `lat lon radius_m location_type`", row.line);
        try {
            gz.add(GeoPoint(std::stod(row.fields[0]), std::stod(row.fields[1])),
                   std::stod(row.fields[2]), row.fields[3]);
        } catch (const DomainError& e) {
            throw ParseError(std::string(e.what()), row.line);
        } catch (const std::exception&) {
            throw ParseError("bad numeric field", row.line);
        }
    }
    return gz;
}

/// Type of the nearest entry whose circle contains the point; ties broken by
/// distance, then lexicographic type.
inline std::string location_type(const Gazetteer& gz, const GeoPoint& p) {
    if (gz.empty()) throw DomainError("gazetteer is empty");
    const Gazetteer::Entry* best = nullptr;
    double best_dist = 0.0;
    for (const auto& e : gz.entries()) {
        const double dist = haversine_m(e.center, p);
        if (dist > e.radius_m) continue;
        if (!best || dist < best_dist ||
            (dist == best_dist && e.location_type < best->location_type)) {
            best = &e;
            best_dist = dist;
        }
    }
    if (!best)
        throw DomainError("unmapped location: no gazetteer entry contains (" +
                          std::to_string(p.lat) + ", " + std::to_string(p.lon) + ")");
    return best->location_type;
}

inline Situation build_situation(const Gazetteer& gz, const GeoPoint& p, const CivilTime& t) {
    return {location_type(gz, p), season_of(t), day_part_of(t)};
}

/// Number of dimensions of `partial` matching the situation. Two situations
/// count as similar when they share at least two dimensions, so a premise is
/// eligible iff overlap >= 2.
inline int overlap(const Situation& s, const Itemset& partial) {
    const Itemset own = s.as_itemset();
    int count = 0;
    Dimension last{};
    bool have_last = false;
    for (const auto& item : partial) {
        if (item.dimension == Dimension::Class)
            throw DomainError("class item in partial situation");
        if (have_last && item.dimension == last)
            throw DomainError("duplicate dimension in partial situation");
        last = item.dimension;
        have_last = true;
        if (contains(own, item)) ++count;
    }
    return count;
}

inline constexpr int kSimilarityGate = 2;

inline bool similar(const Situation& s, const Itemset& partial) {
    return overlap(s, partial) >= kSimilarityGate;
}

} // namespace situwalk
