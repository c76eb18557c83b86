package com.example.util;

public interface Strings {
    static String join(String left, String right) {
        return left + ":" + right;
    }
}
