package com.example.util;

public final class Logging {
    private Logging() {
    }

    public static void info(String message) {
        System.out.println("[info] " + message);
    }
}
