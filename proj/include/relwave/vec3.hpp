#pragma once
#include <cmath>

namespace relwave {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// 3x3 matrix, row-major; used for rotation generators and rotations.
struct Mat3 {
    double a[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

    static Mat3 zero() { return {}; }
    static Mat3 identity() {
        Mat3 m;
        m.a[0][0] = m.a[1][1] = m.a[2][2] = 1.0;
        return m;
    }
    // Antisymmetric generator xi with xi*q = w x q.
    static Mat3 antisymmetric(const Vec3& w) {
        Mat3 m;
        m.a[0][1] = -w.z; m.a[0][2] = w.y;
        m.a[1][0] = w.z;  m.a[1][2] = -w.x;
        m.a[2][0] = -w.y; m.a[2][1] = w.x;
        return m;
    }

    Vec3 apply(const Vec3& v) const {
        return {a[0][0] * v.x + a[0][1] * v.y + a[0][2] * v.z,
                a[1][0] * v.x + a[1][1] * v.y + a[1][2] * v.z,
                a[2][0] * v.x + a[2][1] * v.y + a[2][2] * v.z};
    }
    Mat3 transpose() const {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.a[i][j] = a[j][i];
        return m;
    }
};

inline Mat3 operator*(const Mat3& l, const Mat3& r) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += l.a[i][k] * r.a[k][j];
            m.a[i][j] = s;
        }
    return m;
}

// Rodrigues rotation by axis-angle vector w (angle = |w|).
inline Mat3 rodrigues(const Vec3& w) {
    const double theta = norm(w);
    if (theta < 1e-300) return Mat3::identity();
    const Vec3 n = w / theta;
    const Mat3 k = Mat3::antisymmetric(n);
    const Mat3 k2 = k * k;
    Mat3 r = Mat3::identity();
    const double s = std::sin(theta), c = 1.0 - std::cos(theta);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.a[i][j] += s * k.a[i][j] + c * k2.a[i][j];
    return r;
}

}  // namespace relwave
